#pragma once
#include <vector>

#include "hkforge/core.hpp"

namespace hkforge {

// A point of C u {inf}; roots at infinity are flagged, never stored as big floats.
struct SpherePoint {
  cplx z{0.0, 0.0};
  bool inf = false;
  static SpherePoint at(cplx z) { return {z, false}; }
  static SpherePoint infinity() { return {cplx{}, true}; }
};

// Antipodal partner -1/conj(p).
SpherePoint antipode(const SpherePoint& p);
// Chordal distance |p-q| / sqrt((1+|p|^2)(1+|q|^2)), in [0,1].
double chordal(const SpherePoint& p, const SpherePoint& q);
// Unit vector on S^2 for a stereographic coordinate.
Vector3 unit_vector(const SpherePoint& p);

// Real O(2j) section in psi-coefficient form, m = -j..j ascending.
struct Multiplet {
  int two_j = 0;
  std::vector<cplx> coeffs;

  double j() const { return two_j / 2.0; }
  cplx psi(int two_m) const { return coeffs.at((two_m + two_j) / 2); }
};

struct RootConstellation {
  int two_j = 0;
  double scale = 0.0;
  std::vector<SpherePoint> roots;  // one representative per antipodal pair
};

struct SU2Element {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};
  static SU2Element from_euler(double phi, double theta, double psi);
};

SU2Element compose(const SU2Element& r2, const SU2Element& r1);  // r2 after r1
SU2Element inverse(const SU2Element& r);

// Field-level builders: eta = zbar1/zeta + x1 - z1 zeta and
// eta = zbar2/zeta^2 + vbar2/zeta + x2 - v2 zeta + z2 zeta^2.
Multiplet make_o2(cplx z1, double x1);
Multiplet make_o4(cplx z2, cplx v2, double x2);
struct O2Fields { cplx z1; double x1; };
struct O4Fields { cplx z2; cplx v2; double x2; };
O2Fields o2_fields(const Multiplet& m);
O4Fields o4_fields(const Multiplet& m);

// Polynomial P(zeta) = zeta^j eta(zeta), coefficients of zeta^0..zeta^{2j}.
std::vector<cplx> polynomial(const Multiplet& m);
Multiplet from_polynomial(int two_j, const std::vector<cplx>& p);
cplx eval_polynomial(const std::vector<cplx>& p, cplx z);

void check_wellformed(const Multiplet& m);
bool validate_reality(const Multiplet& m, double tol = 1e-9);

Multiplet roots_to_coefficients(const RootConstellation& c);
RootConstellation coefficients_to_roots(const Multiplet& m, double tol = 1e-8);
// All 2j polynomial roots (infinity flagged), Newton-polished.
std::vector<SpherePoint> polynomial_roots(const Multiplet& m);

SpherePoint mobius_apply(const SU2Element& r, const SpherePoint& p);
RootConstellation mobius_apply(const SU2Element& r, const RootConstellation& c);
Multiplet wigner_rotate(const SU2Element& r, const Multiplet& m);
// (2j+1)x(2j+1) representation matrix acting on psi-coefficients.
std::vector<std::vector<cplx>> wigner_matrix(const SU2Element& r, int two_j);

Vector3 o2_to_vector(const Multiplet& m);

Multiplet scaled(const Multiplet& m, double s);
Multiplet operator+(const Multiplet& a, const Multiplet& b);
Multiplet operator-(const Multiplet& a, const Multiplet& b);
// Pointwise product of sections, spin adds.
Multiplet product(const Multiplet& a, const Multiplet& b);
double max_abs_diff(const Multiplet& a, const Multiplet& b);
double max_abs(const Multiplet& m);

}  // namespace hkforge
