#pragma once
#include "hkforge/multiplet.hpp"

namespace hkforge {

// Curve Y^2 = X^3 - g2 X - g3 with real branch points e1 > e2 > e3.
struct WeierstrassData {
  double g2 = 0, g3 = 0, delta = 0;
  double e1 = 0, e2 = 0, e3 = 0;
  double omega = 0;
  cplx omega_prime;
  double eta = 0;
  cplx eta_prime;
  double q = 0, q_prime = 0;
  double r2 = 0, r2_prime = 0;
  // modulus data kept for downstream use
  double rho = 0, k = 0, kprime = 0;
  double K = 0, Kp = 0, E = 0, Ep = 0;
};

struct EllipticDual {
  double eta_star, omega_star;
};

// Complete integrals K(k), E(k) by the AGM; k' is passed separately for accuracy near 1.
struct CompleteIntegrals {
  double K, E;
};
CompleteIntegrals complete_integrals(double k, double kprime);

WeierstrassData from_modulus(double rho, double k);
WeierstrassData from_modulus(double rho, double k, double kprime);
WeierstrassData from_invariants(double g2, double g3);
WeierstrassData from_multiplet(const Multiplet& m4);

// Inverse of the nome map: modulus k with exp(-pi K'/K) = q, and its complement.
struct ModulusPair {
  double k, kprime;
};
ModulusPair modulus_from_q(double q);
ModulusPair modulus_from_qprime(double qprime);

struct LambertSeries {
  double g2, g3, eta;
  double last_term;  // relative size of the n = order term
};
LambertSeries lambert_g2_g3_eta(const WeierstrassData& w, bool use_prime, int order = 12);

// pi(X0) = -Y0 * int_{e3}^{e2} dX / ((X - X0) 2|Y|), principal value inside (e3, e2).
cplx pi_function(const WeierstrassData& w, double X0, cplx Y0);
// Y0 = sign * sqrt(X0^3 - g2 X0 - g3) with the principal root of the real cubic value.
cplx pi_function(const WeierstrassData& w, double X0, int y0_sign);
cplx curve_y(const WeierstrassData& w, double X0, int y0_sign);

EllipticDual dual_periods(const WeierstrassData& w);

struct PiSensitivity {
  cplx dX, dg2, dg3;
};

struct Differentials {
  double domega_dg2, domega_dg3, deta_dg2, deta_dg3;
  double g2, g3, omega, eta;
  EllipticDual dual;
  PiSensitivity dpi(double X0, cplx Y0) const;
};
Differentials differentials(const WeierstrassData& w);

// Independent evaluations used as oracles.
double weierstrass_zeta(const WeierstrassData& w, double u, int terms = 60);
// Abel map u0 = int_{X0}^{inf} dX / (2 sqrt(cubic)) for X0 > e1.
double abel_map_real(const WeierstrassData& w, double X0);

}  // namespace hkforge
