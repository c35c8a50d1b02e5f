#include "hkforge/multiplet.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace hkforge {

namespace {

using Poly = std::vector<cplx>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, cplx{});
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) r[i + k] += a[i] * b[k];
  return r;
}

double poly_max(const Poly& p) {
  double m = 0;
  for (auto c : p) m = std::max(m, std::abs(c));
  return m;
}

cplx poly_deriv_eval(const Poly& p, cplx z) {
  cplx d{};
  for (size_t n = p.size() - 1; n >= 1; --n) {
    d = d * z + double(n) * p[n];
    if (n == 1) break;
  }
  return d;
}

// Finite nonzero roots of a polynomial with nonzero end coefficients.
std::vector<cplx> core_roots(const Poly& p) {
  const int d = int(p.size()) - 1;
  std::vector<cplx> r;
  if (d == 1) {
    r.push_back(-p[0] / p[1]);
  } else if (d == 2) {
    // cancellation-free quadratic
    cplx disc = std::sqrt(p[1] * p[1] - 4.0 * p[2] * p[0]);
    cplx s = (std::real(std::conj(p[1]) * disc) >= 0) ? p[1] + disc : p[1] - disc;
    cplx q = -0.5 * s;
    if (std::abs(q) == 0.0) {
      r = {cplx{}, cplx{}};
    } else {
      r.push_back(q / p[2]);
      r.push_back(p[0] / q);
    }
  } else if (d >= 3) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[i] / p[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    for (int i = 0; i < d; ++i) r.push_back(es.eigenvalues()[i]);
  }
  // two Newton polish steps, kept only when they reduce the residual
  for (auto& z : r) {
    for (int it = 0; it < 2; ++it) {
      cplx f = eval_polynomial(p, z);
      cplx fp = poly_deriv_eval(p, z);
      if (std::abs(fp) == 0.0) break;
      cplx zn = z - f / fp;
      if (std::abs(eval_polynomial(p, zn)) < std::abs(f)) z = zn;
    }
  }
  return r;
}

double canonical_arg(cplx z) {
  double a = std::arg(z);
  return a < 0 ? a + 2 * kPi : a;
}

// True when p should be the stored representative of the pair {p, antipode(p)}.
bool prefer(const SpherePoint& p, const SpherePoint& q) {
  if (p.inf) return false;
  if (q.inf) return true;
  double ap = std::abs(p.z), aq = std::abs(q.z);
  if (std::abs(ap - aq) > 1e-12 * (1 + ap + aq)) return ap < aq;
  return canonical_arg(p.z) <= canonical_arg(q.z);
}

void require_integer_spin(int two_j, const char* what) {
  if (two_j % 2 != 0)
    throw Error(ErrorKind::domain, std::string(what) + ": half-integer spin admits no real sections");
}

}  // namespace

SpherePoint antipode(const SpherePoint& p) {
  if (p.inf) return SpherePoint::at(cplx{});
  if (p.z == cplx{}) return SpherePoint::infinity();
  return SpherePoint::at(-1.0 / std::conj(p.z));
}

double chordal(const SpherePoint& p, const SpherePoint& q) {
  if (p.inf && q.inf) return 0.0;
  if (p.inf) return 1.0 / std::sqrt(1.0 + std::norm(q.z));
  if (q.inf) return 1.0 / std::sqrt(1.0 + std::norm(p.z));
  return std::abs(p.z - q.z) / std::sqrt((1.0 + std::norm(p.z)) * (1.0 + std::norm(q.z)));
}

Vector3 unit_vector(const SpherePoint& p) {
  if (p.inf) return {0, 0, -1};
  double n = 1.0 + std::norm(p.z);
  return {2 * p.z.real() / n, 2 * p.z.imag() / n, (1.0 - std::norm(p.z)) / n};
}

SU2Element SU2Element::from_euler(double phi, double theta, double psi) {
  SU2Element r;
  r.a = std::polar(std::cos(theta / 2), (phi + psi) / 2);
  r.b = std::polar(std::sin(theta / 2), (phi - psi) / 2);
  return r;
}

SU2Element compose(const SU2Element& r2, const SU2Element& r1) {
  return {r2.a * r1.a - r2.b * std::conj(r1.b), r2.a * r1.b + r2.b * std::conj(r1.a)};
}

SU2Element inverse(const SU2Element& r) { return {std::conj(r.a), -r.b}; }

Multiplet make_o2(cplx z1, double x1) {
  return {2, {z1, x1 / std::sqrt(2.0), -std::conj(z1)}};
}

Multiplet make_o4(cplx z2, cplx v2, double x2) {
  return {4, {z2, 0.5 * v2, x2 / std::sqrt(6.0), -0.5 * std::conj(v2), std::conj(z2)}};
}

O2Fields o2_fields(const Multiplet& m) {
  if (m.two_j != 2) throw Error(ErrorKind::domain, "expected an O(2) multiplet (j=1)");
  check_wellformed(m);
  return {m.coeffs[0], std::sqrt(2.0) * m.coeffs[1].real()};
}

O4Fields o4_fields(const Multiplet& m) {
  if (m.two_j != 4) throw Error(ErrorKind::domain, "expected an O(4) multiplet (j=2)");
  check_wellformed(m);
  return {m.coeffs[0], 2.0 * m.coeffs[1], std::sqrt(6.0) * m.coeffs[2].real()};
}

void check_wellformed(const Multiplet& m) {
  if (m.two_j < 0 || m.coeffs.size() != size_t(m.two_j + 1))
    throw Error(ErrorKind::structural, "coefficient list length must be 2j+1");
  for (auto c : m.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::structural, "non-finite coefficient");
}

std::vector<cplx> polynomial(const Multiplet& m) {
  check_wellformed(m);
  Poly p(m.two_j + 1);
  for (int n = 0; n <= m.two_j; ++n)
    p[n] = std::sqrt(binomial(m.two_j, n)) * std::conj(m.coeffs[n]);
  return p;
}

Multiplet from_polynomial(int two_j, const std::vector<cplx>& p) {
  if (p.size() != size_t(two_j + 1)) throw Error(ErrorKind::structural, "polynomial degree mismatch");
  Multiplet m{two_j, std::vector<cplx>(two_j + 1)};
  for (int n = 0; n <= two_j; ++n) m.coeffs[n] = std::conj(p[n] / std::sqrt(binomial(two_j, n)));
  return m;
}

cplx eval_polynomial(const std::vector<cplx>& p, cplx z) {
  cplx r{};
  for (size_t n = p.size(); n-- > 0;) r = r * z + p[n];
  return r;
}

bool validate_reality(const Multiplet& m, double tol) {
  check_wellformed(m);
  double scale = max_abs(m);
  if (scale == 0.0) return true;
  const int tj = m.two_j;
  for (int n = 0; n <= tj; ++n) {
    // n indexes m = n - j; partner index 2j - n holds -m
    int sign_exp = (tj % 2 == 0) ? (n - tj / 2) : n;
    double s = (sign_exp % 2 == 0) ? 1.0 : -1.0;
    cplx want = s * std::conj(m.coeffs[n]);
    if (std::abs(m.coeffs[tj - n] - want) > tol * scale) return false;
  }
  return true;
}

std::vector<SpherePoint> polynomial_roots(const Multiplet& m) {
  Poly p = polynomial(m);
  double big = poly_max(p);
  if (big == 0.0) throw Error(ErrorKind::degenerate, "zero multiplet has no roots");
  const double thr = 1e-14 * big;
  int lo = 0, hi = int(p.size()) - 1;
  while (hi >= 0 && std::abs(p[hi]) <= thr) --hi;
  while (lo <= hi && std::abs(p[lo]) <= thr) ++lo;
  std::vector<SpherePoint> out;
  for (int i = 0; i < lo; ++i) out.push_back(SpherePoint::at(cplx{}));
  for (int i = hi + 1; i < int(p.size()); ++i) out.push_back(SpherePoint::infinity());
  if (hi > lo) {
    Poly core(p.begin() + lo, p.begin() + hi + 1);
    for (auto z : core_roots(core)) out.push_back(SpherePoint::at(z));
  }
  return out;
}

RootConstellation coefficients_to_roots(const Multiplet& m, double tol) {
  require_integer_spin(m.two_j, "coefficients_to_roots");
  if (!validate_reality(m)) throw Error(ErrorKind::reality, "multiplet violates the reality condition");
  std::vector<SpherePoint> all = polynomial_roots(m);
  // clustered roots are only located to ~sqrt(eps), widen the pairing tolerance there
  double min_sep = 1.0;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t k = i + 1; k < all.size(); ++k) min_sep = std::min(min_sep, chordal(all[i], all[k]));
  double pair_tol = min_sep < 1e-4 ? std::max(tol, 1e-5) : tol;

  std::vector<int> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<bool> used(all.size(), false);
  RootConstellation c{m.two_j, 0.0, {}};
  for (int i : order) {
    if (used[i]) continue;
    used[i] = true;
    SpherePoint want = antipode(all[i]);
    int best = -1;
    double bd = 2.0;
    for (size_t k = 0; k < all.size(); ++k) {
      if (used[k]) continue;
      double d = chordal(all[k], want);
      if (d < bd) { bd = d; best = int(k); }
    }
    if (best < 0 || bd > pair_tol)
      throw Error(ErrorKind::reality, "antipodal root pairing failed (chordal mismatch " + std::to_string(bd) + ")");
    used[best] = true;
    c.roots.push_back(prefer(all[i], all[best]) ? all[i] : all[best]);
  }
  RootConstellation unit = c;
  unit.scale = 1.0;
  Poly q = polynomial(roots_to_coefficients(unit));
  Poly p = polynomial(m);
  double num = 0, den = 0;
  for (size_t n = 0; n < p.size(); ++n) {
    num += std::real(std::conj(q[n]) * p[n]);
    den += std::norm(q[n]);
  }
  c.scale = num / den;
  return c;
}

Multiplet roots_to_coefficients(const RootConstellation& c) {
  require_integer_spin(c.two_j, "roots_to_coefficients");
  if (c.roots.size() != size_t(c.two_j / 2))
    throw Error(ErrorKind::structural, "constellation needs j root representatives");
  if (!std::isfinite(c.scale)) throw Error(ErrorKind::structural, "scale must be finite");
  Poly p{cplx{c.scale, 0.0}};
  for (const auto& r : c.roots) {
    Poly f;
    if (r.inf) {
      f = {cplx{}, cplx{-1.0, 0.0}, cplx{}};
    } else {
      double n = 1.0 + std::norm(r.z);
      f = {-r.z / n, cplx{(1.0 - std::norm(r.z)) / n, 0.0}, std::conj(r.z) / n};
    }
    p = poly_mul(p, f);
  }
  return from_polynomial(c.two_j, p);
}

SpherePoint mobius_apply(const SU2Element& r, const SpherePoint& p) {
  if (p.inf) {
    if (r.b == cplx{}) return SpherePoint::infinity();
    return SpherePoint::at(r.a / (-std::conj(r.b)));
  }
  cplx den = -std::conj(r.b) * p.z + std::conj(r.a);
  if (den == cplx{}) return SpherePoint::infinity();
  return SpherePoint::at((r.a * p.z + r.b) / den);
}

RootConstellation mobius_apply(const SU2Element& r, const RootConstellation& c) {
  RootConstellation out = c;
  for (auto& p : out.roots) p = mobius_apply(r, p);
  return out;
}

Multiplet wigner_rotate(const SU2Element& r, const Multiplet& m) {
  Poly p = polynomial(m);
  const int d = m.two_j;
  Poly u{r.a, std::conj(r.b)};   // a + bbar t
  Poly v{-r.b, std::conj(r.a)};  // -b + abar t
  Poly out(d + 1, cplx{});
  for (int n = 0; n <= d; ++n) {
    if (p[n] == cplx{}) continue;
    Poly term{p[n]};
    for (int i = 0; i < d - n; ++i) term = poly_mul(term, u);
    for (int i = 0; i < n; ++i) term = poly_mul(term, v);
    for (int k = 0; k <= d; ++k) out[k] += term[k];
  }
  return from_polynomial(d, out);
}

std::vector<std::vector<cplx>> wigner_matrix(const SU2Element& r, int two_j) {
  std::vector<std::vector<cplx>> dm(two_j + 1, std::vector<cplx>(two_j + 1));
  for (int c = 0; c <= two_j; ++c) {
    Multiplet e{two_j, std::vector<cplx>(two_j + 1, cplx{})};
    e.coeffs[c] = 1.0;
    Multiplet col = wigner_rotate(r, e);
    for (int row = 0; row <= two_j; ++row) dm[row][c] = col.coeffs[row];
  }
  return dm;
}

Vector3 o2_to_vector(const Multiplet& m) {
  auto f = o2_fields(m);
  return {2 * f.z1.real(), 2 * f.z1.imag(), f.x1};
}

Multiplet scaled(const Multiplet& m, double s) {
  Multiplet r = m;
  for (auto& c : r.coeffs) c *= s;
  return r;
}

Multiplet operator+(const Multiplet& a, const Multiplet& b) {
  if (a.two_j != b.two_j) throw Error(ErrorKind::domain, "spin mismatch");
  Multiplet r = a;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

Multiplet operator-(const Multiplet& a, const Multiplet& b) { return a + scaled(b, -1.0); }

Multiplet product(const Multiplet& a, const Multiplet& b) {
  return from_polynomial(a.two_j + b.two_j, poly_mul(polynomial(a), polynomial(b)));
}

double max_abs_diff(const Multiplet& a, const Multiplet& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw Error(ErrorKind::domain, "spin mismatch");
  double m = 0;
  for (size_t i = 0; i < a.coeffs.size(); ++i) m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
  return m;
}

double max_abs(const Multiplet& m) {
  double r = 0;
  for (auto c : m.coeffs) r = std::max(r, std::abs(c));
  return r;
}

}  // namespace hkforge
