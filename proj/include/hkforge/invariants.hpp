#pragma once
#include <map>
#include <string>
#include <vector>

#include "hkforge/diagram.hpp"
#include "hkforge/multiplet.hpp"

namespace hkforge {

double g_sigma2(const Multiplet& m2);

struct O4Basic {
  double g_rho2, g_rho3;
};
O4Basic o4_basic_invariants(const Multiplet& m4);

struct MixedInvariants {
  double g_rho_sigma2, g_rho2_sigma2;
};
MixedInvariants mixed_invariants(const Multiplet& m2, const Multiplet& m4);

// Same quantities through brute-force contraction of the standard figures.
double g_sigma2_diagram(const Multiplet& m2);
O4Basic o4_basic_diagram(const Multiplet& m4);
MixedInvariants mixed_invariants_diagram(const Multiplet& m2, const Multiplet& m4);

// Canonical labelling of an O(2) constellation: sigma > 0, gamma the matching root.
struct O2Labels {
  double sigma;
  SpherePoint gamma;
};
O2Labels o2_labels(const RootConstellation& c2);

// O(4) labelling with rho > 0, alpha kept and beta flipped to its antipode when needed.
// k = k_{alpha beta}, and e1 > e2 > e3 follow from (rho, k).
struct O4Labels {
  double rho;
  SpherePoint alpha, beta;
  double k, kprime;
};
O4Labels o4_labels(const RootConstellation& c4);

struct Branch {
  double e1, e2, e3;
};
Branch branch_points(double rho, double k);
O4Basic o4_basic_from_roots(double rho, double k);

struct QFactors {
  double Q0sq, Qplussq, Qminussq;
};
QFactors q_factors(const RootConstellation& c2, const RootConstellation& c4);
// Q0^2 through 36 Vol^2 of the tetrahedron spanned by the unit vectors.
double q0sq_tetrahedron(const RootConstellation& c2, const RootConstellation& c4);

struct LambdaFamily {
  double g2, g3;
};
LambdaFamily lambda_family(const Multiplet& m2, const Multiplet& m4, double lambda);
// o4_basic_invariants of the literal combination eta4 - lambda (eta2)^2.
LambdaFamily lambda_family_literal(const Multiplet& m2, const Multiplet& m4, double lambda);

struct AngularInvariants {
  double A, B;
};
AngularInvariants angular_invariants(const Multiplet& m2, const Multiplet& m4);

struct InvariantSet {
  double g_sigma2 = 0, g_rho2 = 0, g_rho3 = 0, g_rho_sigma2 = 0, g_rho2_sigma2 = 0;
  double A = 0, B = 0;
  double Q0sq = 0, Qplussq = 0, Qminussq = 0;
};
InvariantSet invariant_set(const Multiplet& m2, const Multiplet& m4);

// Right-hand sides of the critical-coupling relations, from root data.
struct CriticalRelations {
  double lambda[3];  // 3 e_i / sigma^2
  double g3_at[3];   // lambda_family(...).g3 at those couplings
  double rhs[3];     // (3/4) rho^2 e_i times Q_-^2, -Q_0^2, Q_+^2
  double g_rho_sigma2_roots;
  double g_rho2_sigma2_roots;
};
CriticalRelations critical_relations(const Multiplet& m2, const Multiplet& m4);

// Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M> via the Racah formula in exact
// integer arithmetic; all arguments are doubled (2j, 2m).
double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tJ, int tM);

using State = std::vector<cplx>;  // components m = -j..j ascending
State couple(const State& a, int tj1, const State& b, int tj2, int tJ);
cplx inner(const State& a, const State& b);

struct AmplitudeCheck {
  cplx computed;
  cplx expected;
};
std::map<std::string, AmplitudeCheck> amplitude_couplings(const Multiplet& m2, const Multiplet& m4);

}  // namespace hkforge
