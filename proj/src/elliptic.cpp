#include "hkforge/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "hkforge/invariants.hpp"
#include "hkforge/quadrature.hpp"

namespace hkforge {

CompleteIntegrals complete_integrals(double k, double kprime) {
  double a = 1.0, b = kprime, c = k;
  double pow2 = 0.5;  // 2^{n-1} at n = 0
  double sum = pow2 * c * c;
  for (int n = 1; n < 40; ++n) {
    double an = 0.5 * (a + b);
    double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    pow2 *= 2;
    sum += pow2 * c * c;
    if (std::abs(c) < 1e-17 * a) break;
  }
  double K = kPi / (2 * a);
  return {K, K * (1 - sum)};
}

WeierstrassData from_modulus(double rho, double k) {
  if (!(k > 0 && k < 1)) throw Error(ErrorKind::domain, "modulus k must lie in (0,1)");
  return from_modulus(rho, k, std::sqrt((1 - k) * (1 + k)));
}

WeierstrassData from_modulus(double rho, double k, double kprime) {
  if (!(rho > 0)) throw Error(ErrorKind::domain, "rho must be positive");
  // k' rounds to 1 for k below ~1e-8, which is still a valid torus
  if (!(k > 0 && k < 1 && kprime > 0 && kprime <= 1)) throw Error(ErrorKind::domain, "modulus k must lie in (0,1)");
  WeierstrassData w;
  w.rho = rho;
  w.k = k;
  w.kprime = kprime;
  const double k2 = k * k, kp2 = kprime * kprime;
  // recompute with k' explicitly for accuracy
  w.e1 = rho * (1 + kp2) / 3;
  w.e2 = rho * (k2 - kp2) / 3;
  w.e3 = -rho * (1 + k2) / 3;
  w.g2 = -(w.e1 * w.e2 + w.e2 * w.e3 + w.e3 * w.e1);
  w.g3 = w.e1 * w.e2 * w.e3;
  double p = rho * rho * rho * k2 * kp2;
  w.delta = p * p;
  auto ci = complete_integrals(k, kprime);
  auto cp = complete_integrals(kprime, k);
  w.K = ci.K;
  w.E = ci.E;
  w.Kp = cp.K;
  w.Ep = cp.E;
  const double sr = std::sqrt(rho);
  w.omega = w.K / sr;
  w.omega_prime = cplx{0.0, w.Kp / sr};
  w.eta = sr * w.E - w.e1 * w.K / sr;
  w.eta_prime = cplx{0.0, -(sr * w.Ep + w.e3 * w.Kp / sr)};
  w.q = std::exp(-kPi * w.Kp / w.K);
  w.q_prime = std::exp(-kPi * w.K / w.Kp);
  w.r2 = 1 / (2 * w.omega);
  w.r2_prime = kPi * sr / (2 * w.Kp);
  return w;
}

WeierstrassData from_invariants(double g2, double g3) {
  double delta_naive = 4 * g2 * g2 * g2 - 27 * g3 * g3;
  if (!(g2 > 0) || delta_naive <= 1e-14 * 4 * g2 * g2 * g2)
    throw Error(ErrorKind::pinched, "pinched torus: discriminant vanishes");
  // trigonometric solution of X^3 - g2 X - g3 = 0, then Newton polish
  double r = 2 * std::sqrt(g2 / 3);
  double c = std::clamp(4 * g3 / (r * r * r), -1.0, 1.0);
  double th = std::acos(c) / 3;
  double e[3];
  for (int i = 0; i < 3; ++i) e[i] = r * std::cos(th - 2 * kPi * i / 3);
  for (double& x : e) {
    for (int it = 0; it < 3; ++it) {
      double f = (x * x - g2) * x - g3;
      double fp = 3 * x * x - g2;
      if (fp == 0) break;
      double xn = x - f / fp;
      if (std::abs((xn * xn - g2) * xn - g3) < std::abs(f)) x = xn;
    }
  }
  // e[0] >= e[1] >= e[2] by construction of the cosine branches
  std::sort(e, e + 3, [](double a, double b) { return a > b; });
  double rho = e[0] - e[2];
  double k2 = (e[1] - e[2]) / rho, kp2 = (e[0] - e[1]) / rho;
  if (!(k2 > 0 && kp2 > 0)) throw Error(ErrorKind::pinched, "pinched torus: coincident branch points");
  WeierstrassData w = from_modulus(rho, std::sqrt(k2), std::sqrt(kp2));
  // keep the caller's invariants and solved branch points
  w.g2 = g2;
  w.g3 = g3;
  w.e1 = e[0];
  w.e2 = e[1];
  w.e3 = e[2];
  double p = (e[0] - e[1]) * (e[0] - e[2]) * (e[1] - e[2]);
  w.delta = p * p;
  w.eta = std::sqrt(rho) * w.E - w.e1 * w.K / std::sqrt(rho);
  w.eta_prime = cplx{0.0, -(std::sqrt(rho) * w.Ep + w.e3 * w.Kp / std::sqrt(rho))};
  return w;
}

WeierstrassData from_multiplet(const Multiplet& m4) {
  auto b = o4_basic_invariants(m4);
  return from_invariants(b.g_rho2, b.g_rho3);
}

ModulusPair modulus_from_q(double q) {
  if (!(q > 0 && q < 1)) throw Error(ErrorKind::domain, "nome must lie in (0,1)");
  // Jacobi theta quotient: k = theta2^2/theta3^2, k' = theta4^2/theta3^2
  double t2 = 0, t3 = 1, t4 = 1;
  for (int n = 0; n < 200; ++n) {
    double a = std::pow(q, (n + 0.5) * (n + 0.5));
    t2 += 2 * a;
    if (n >= 1) {
      double b = std::pow(q, double(n) * n);
      t3 += 2 * b;
      t4 += (n % 2 ? -2 : 2) * b;
    }
    if (a < 1e-300) break;
  }
  double k = t2 * t2 / (t3 * t3), kp = t4 * t4 / (t3 * t3);
  return {k, kp};
}

ModulusPair modulus_from_qprime(double qprime) {
  auto m = modulus_from_q(qprime);
  return {m.kprime, m.k};
}

LambertSeries lambert_g2_g3_eta(const WeierstrassData& w, bool use_prime, int order) {
  if (order < 0) throw Error(ErrorKind::domain, "series order must be non-negative");
  cplx om = use_prime ? w.omega_prime : cplx{w.omega, 0.0};
  double q = use_prime ? w.q_prime : w.q;
  cplx s1{}, s3{}, s5{};
  double last = 0;
  double q2 = q * q, qn = 1;
  for (int n = 1; n <= order; ++n) {
    qn *= q2;
    double l = qn / (1 - qn);
    s1 += double(n) * l;
    s3 += std::pow(double(n), 3) * l;
    s5 += std::pow(double(n), 5) * l;
    if (n == order) last = 504 * std::pow(double(n), 5) * l;
  }
  cplx x = kPi / (2.0 * om);
  cplx g2 = (1.0 / 3) * std::pow(x, 4) * (1.0 + 240.0 * s3);
  cplx g3 = (2.0 / 27) * std::pow(x, 6) * (1.0 - 504.0 * s5);
  cplx eta = kPi * kPi / (12.0 * om) * (1.0 - 24.0 * s1);
  if (use_prime) eta = (kI * kPi / 2.0 + w.omega * eta) / w.omega_prime;
  return {g2.real(), g3.real(), eta.real(), last};
}

cplx curve_y(const WeierstrassData& w, double X0, int y0_sign) {
  double c = (X0 * X0 - w.g2) * X0 - w.g3;
  double s = y0_sign >= 0 ? 1.0 : -1.0;
  return c >= 0 ? cplx{s * std::sqrt(c), 0.0} : cplx{0.0, s * std::sqrt(-c)};
}

cplx pi_function(const WeierstrassData& w, double X0, int y0_sign) {
  if (y0_sign == 0) throw Error(ErrorKind::domain, "Y0 sign must be +1 or -1");
  return pi_function(w, X0, curve_y(w, X0, y0_sign));
}

cplx pi_function(const WeierstrassData& w, double X0, cplx Y0) {
  const double span = w.e2 - w.e3;
  const double scale = std::abs(w.e1) + std::abs(w.e3);
  if (Y0 == cplx{}) throw Error(ErrorKind::domain, "Y0 = 0 is not allowed");
  if (std::abs(X0 - w.e2) <= 1e-14 * scale || std::abs(X0 - w.e3) <= 1e-14 * scale)
    throw Error(ErrorKind::pole_on_cycle, "X0 at a branch point");
  const double a = w.e1 - w.e2;  // rho k'^2
  // X(u) = e2 - span sin^2 u, e1 - X(u) = a + span sin^2 u
  auto h = [&](double u) {
    double s = std::sin(u);
    return 1.0 / std::sqrt(a + span * s * s);
  };
  double I;
  if (X0 > w.e2) {
    auto f = [&](double u, double, double) {
      double s = std::sin(u);
      return -h(u) / ((X0 - w.e2) + span * s * s);
    };
    I = tanh_sinh(f, 0, kPi / 2).value;
  } else if (X0 < w.e3) {
    auto f = [&](double u, double, double) {
      double c = std::cos(u);
      return h(u) / ((w.e3 - X0) + span * c * c);
    };
    I = tanh_sinh(f, 0, kPi / 2).value;
  } else {
    // X(u) - X0 = -span sin(u - u0) sin(u + u0); principal value by subtraction
    const double u0 = std::asin(std::sqrt((w.e2 - X0) / span));
    auto G = [&](double u) { return -h(u) / (span * std::sin(u + u0)); };
    const double G0 = G(u0);
    auto left = [&](double u, double, double to_b) {  // u in (0, u0), u - u0 = -to_b
      return (G(u) - G0) / std::sin(-to_b);
    };
    auto right = [&](double u, double from_a, double) {  // u in (u0, pi/2), u - u0 = from_a
      return (G(u) - G0) / std::sin(from_a);
    };
    double smooth = tanh_sinh(left, 0, u0).value + tanh_sinh(right, u0, kPi / 2).value;
    double pv = std::log(std::tan((kPi / 2 - u0) / 2)) - std::log(std::tan(u0 / 2));
    I = smooth + G0 * pv;
  }
  return -Y0 * I;
}

EllipticDual dual_periods(const WeierstrassData& w) {
  if (!(w.delta > 0)) throw Error(ErrorKind::pinched, "dual periods need a nonzero discriminant");
  return {(2 * w.g2 * w.g2 * w.omega - 9 * w.g3 * w.eta) / w.delta,
          (3 * w.g3 * w.omega - 2 * w.g2 * w.eta) / w.delta};
}

Differentials differentials(const WeierstrassData& w) {
  Differentials d;
  d.dual = dual_periods(w);
  d.g2 = w.g2;
  d.g3 = w.g3;
  d.omega = w.omega;
  d.eta = w.eta;
  d.domega_dg2 = -0.5 * d.dual.eta_star;
  d.domega_dg3 = 1.5 * d.dual.omega_star;
  d.deta_dg2 = -0.5 * w.g2 * d.dual.omega_star;
  d.deta_dg3 = 0.5 * d.dual.eta_star;
  return d;
}

PiSensitivity Differentials::dpi(double X, cplx Y0) const {
  const double es = dual.eta_star, os = dual.omega_star;
  cplx inv = 1.0 / (2.0 * Y0);
  return {(eta + X * omega) * inv, ((g2 * X + 3 * g3) * os - X * X * es) * inv,
          ((3 * X * X - 2 * g2) * os - X * es) * inv};
}

double weierstrass_zeta(const WeierstrassData& w, double u, int terms) {
  const double om = w.omega;
  double s = 0, q2n = 1;
  for (int n = 1; n <= terms; ++n) {
    q2n *= w.q * w.q;
    s += q2n / (1 - q2n) * std::sin(n * kPi * u / om);
  }
  return w.eta * u / om + kPi / (2 * om) / std::tan(kPi * u / (2 * om)) + 2 * kPi / om * s;
}

double abel_map_real(const WeierstrassData& w, double X0) {
  if (!(X0 > w.e1)) throw Error(ErrorKind::domain, "real Abel map needs X0 > e1");
  const double d = X0 - w.e1;
  auto f = [&](double phi, double, double) {
    double s = std::sin(phi);
    return std::sqrt(d) * std::cos(phi) /
           std::sqrt((d + (w.e1 - w.e2) * s * s) * (d + (w.e1 - w.e3) * s * s));
  };
  return tanh_sinh(f, 0, kPi / 2).value;
}

}  // namespace hkforge
