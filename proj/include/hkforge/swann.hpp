#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hkforge/elliptic.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/multiplet.hpp"

namespace hkforge {

// ---- two O(2) multiplets ----

struct O2O2State {
  Vector3 r1, r2;
  cplx z1, z2;
  double x1 = 0, x2 = 0;
  cplx u1, u2;  // Legendre duals, imaginary parts set to zero
  double F = 0, K = 0;
};

O2O2State o2o2_state(const Multiplet& m1, const Multiplet& m2);
double o2o2_F(cplx z1, double x1, cplx z2, double x2);

struct O2O2XDerivatives {
  double dF_dx1, dF_dx2;
};
O2O2XDerivatives o2o2_x_derivatives(cplx z1, double x1, cplx z2, double x2);

// -2 |r1 x r2|^2 / r2^3
double o2o2_potential(const Vector3& r1, const Vector3& r2);
// F - x1 dF/dx1 - x2 dF/dx2
double o2o2_legendre(cplx z1, double x1, cplx z2, double x2);

struct HiggsField {
  double phi[2][2];
  Vector3 grad[2][2][2];  // grad[i][k][j] = gradient w.r.t. r_i of phi[k][j]
};
HiggsField o2o2_higgs(const Vector3& r1, const Vector3& r2);

// ---- O(2) + O(4) ----

struct O2O4Aux {
  double x_plus = 0, x_minus = 0;
  double v_plus = 0, v_minus = 0;
  double z1_plus = 0, z1_minus = 0;
  cplx sqrt_z2;
  cplx pi_plus, pi_minus;
  double M_plus = 0, M_minus = 0, N_plus = 0, N_minus = 0;
  bool mn_regular = true;  // false when (x+ - x-) v+- is too small for the closed forms
};

struct O2O4Gradients {
  double dF_dx1 = 0;
  cplx dF_dv2;
  double dF_dx2 = 0;
  bool fallback = false;  // dF/dv2 taken from finite differences
};

struct O2O4State {
  Multiplet m2, m4;
  InvariantSet inv;
  WeierstrassData w;
  EllipticDual dual{};
  O2O4Aux aux;
  O2O4Gradients grad;
  cplx u1, u2;
  double F = 0;
  double K = 0;  // Legendre assembly
  bool solved = false;
  double residual = 0;  // dF/dx2 relative to its scale
};

O2O4Aux o2o4_aux(const Multiplet& m2, const Multiplet& m4, const WeierstrassData& w, const InvariantSet& inv);
O2O4State o2o4_state(const Multiplet& m2, const Multiplet& m4);
double o2o4_F(const Multiplet& m2, const Multiplet& m4);
O2O4Gradients o2o4_gradients(const Multiplet& m2, const Multiplet& m4);
// Central differences of o2o4_F; dF/dv2 is the Wirtinger derivative.
O2O4Gradients o2o4_gradients_fd(const Multiplet& m2, const Multiplet& m4, double h = 1e-5);

// Constraint function dF/dx2 = -2 (g_rho_sigma2 eta* - g_rho2_sigma2 omega*) and its natural scale.
double constraint_value(const InvariantSet& inv, const EllipticDual& d);
double constraint_scale(const InvariantSet& inv, const EllipticDual& d);

double o2o4_potential_compact(const InvariantSet& inv, const EllipticDual& d);
// Compact form plus the term proportional to the constraint.
double o2o4_potential_mixed(const InvariantSet& inv, const EllipticDual& d, double x_sum);
double o2o4_legendre(const Multiplet& m2, const Multiplet& m4);
// Compact potential at a solved state; contract error otherwise.
double o2o4_potential(const O2O4State& s);

struct DarbouxCoords {
  cplx U2, Z2;
};
DarbouxCoords to_darboux(cplx u2, cplx z2);
void from_darboux(const DarbouxCoords& d, cplx& u2, cplx& z2);

struct SolverOptions {
  double tol = 1e-10;
  double step = 0.05;   // initial bracket step relative to the O(4) scale
  int max_expand = 60;
  int max_iter = 200;
};

// Solve dF/dx2 = 0 for x2 with z2, v2 held fixed.
O2O4State solve_constraint(const Multiplet& m2, cplx z2, cplx v2, double x2_guess, const SolverOptions& opt = {});

// Root of the constraint along a one-parameter family of O(2) multiplets at fixed m4,
// located by a sign scan of dF/dx2 on [lo, hi] and refined by bracketing.
std::optional<Multiplet> constraint_root_along(const std::function<Multiplet(double)>& family, double lo, double hi,
                                               const Multiplet& m4, int samples = 96);
// Rotates the O(2) multiplet about a few fixed axes until the constraint holds at the given
// m4, then reruns solve_constraint from a perturbed x2. Empty when no direction works.
std::optional<O2O4State> solve_by_direction(const Multiplet& m2, const Multiplet& m4, double solver_tol = 1e-11);

// ---- asymptotic regimes ----

enum class Regime { q, qprime };
const char* to_string(Regime r);
Regime regime_from_string(const std::string& s);

struct SeriesTerm {
  int power;       // multiple of the exponential e^{-2 r2'/r2} or e^{-2 pi^2 r2/r2'}
  double coeff;    // evaluated coefficient
  std::string form;
};

struct SeriesReport {
  Regime regime = Regime::q;
  int order = 0;
  double r1 = 0, r2 = 0, r2p = 0, A = 0;
  double small = 0;  // the expansion variable (q^2 or q'^2)
  std::vector<SeriesTerm> ba, k;
  double ba_sum = 0, k_sum = 0;
};

SeriesReport asymptotic_expansion(Regime regime, int order, double r1, double r2, double r2p, double A);

// A solved configuration at a prescribed nome.
struct SweepPoint {
  double nome = 0;
  O2O4State state;
  double ba = 0;     // B/A at the solved state
  double x2_seed = 0;  // x2 of the constructed O(4) multiplet before re-solving
};
SweepPoint solved_point(Regime regime, double nome, double solver_tol = 1e-11);

struct CoefficientFit {
  Regime regime = Regime::q;
  std::vector<double> nomes, ba;
  std::vector<std::string> basis;
  std::vector<double> fitted, expected;
  std::vector<double> rel_error;
};
CoefficientFit fit_asymptotics(Regime regime, const std::vector<double>& nomes);
std::vector<double> default_nomes(Regime regime);

struct DegenerateReport {
  double qprime = 0;
  double A = 0, A_zero_order = 0, ba = 0;
  double delta = 0;
  double K0 = 0, K0_sin = 0, K_o2o2 = 0, K_full = 0;
  double ba_antipodal = 0;  // zero-order B/A at alpha = -1/conj(beta), unsolved
  double q_regime_ba = 0;   // solved B/A at small q
};
DegenerateReport degenerate_limits(double qprime = 1e-6, double q = 1e-3);

}  // namespace hkforge
