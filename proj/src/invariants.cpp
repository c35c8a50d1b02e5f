#include "hkforge/invariants.hpp"

#include <cmath>
#include <numeric>

#include "hkforge/coherent.hpp"

namespace hkforge {

double g_sigma2(const Multiplet& m2) {
  auto f = o2_fields(m2);
  return 4 * std::norm(f.z1) + f.x1 * f.x1;
}

O4Basic o4_basic_invariants(const Multiplet& m4) {
  auto f = o4_fields(m4);
  double z = std::norm(f.z2), v = std::norm(f.v2), x = f.x2;
  double g2 = 4 * z + v + x * x / 3;
  double g3 = (8.0 / 3) * z * x - v * x / 3 - (2.0 / 27) * x * x * x -
              2 * std::real(f.z2 * std::conj(f.v2) * std::conj(f.v2));
  return {g2, g3};
}

MixedInvariants mixed_invariants(const Multiplet& m2, const Multiplet& m4) {
  auto a = o2_fields(m2);
  auto b = o4_fields(m4);
  const cplx zc = std::conj(a.z1);
  const double x1 = a.x1, x2 = b.x2;
  const cplx z2 = b.z2, v2 = b.v2;
  const double w1 = x1 * x1 - 2 * std::norm(a.z1);
  double grs = (2.0 / 3) * x2 * w1 + 2 * std::real(4.0 * z2 * zc * zc) + 2 * std::real(2.0 * v2 * zc * x1);
  double gr2s2 = (8 * std::norm(z2) - std::norm(v2) - (2.0 / 3) * x2 * x2) * w1 -
                 2 * std::real(12.0 * z2 * std::conj(v2) * zc * x1) + 2 * std::real(8.0 * z2 * x2 * zc * zc) -
                 2 * std::real(2.0 * v2 * x2 * zc * x1) - 2 * std::real(3.0 * v2 * v2 * zc * zc);
  return {grs, gr2s2};
}

double g_sigma2_diagram(const Multiplet& m2) {
  TensorMap t{{"o2", tensor_of(m2)}};
  return -2 * contract_diagram(bubble("o2", "o2", 2), t).real();
}

O4Basic o4_basic_diagram(const Multiplet& m4) {
  TensorMap t{{"o4", tensor_of(m4)}};
  double g2 = 2 * contract_diagram(bubble("o4", "o4", 4), t).real();
  double g3 = (8.0 / 3) * contract_diagram(o4_double_polygon(3), t).real();
  return {g2, g3};
}

MixedInvariants mixed_invariants_diagram(const Multiplet& m2, const Multiplet& m4) {
  TensorMap t = standard_tensors(m2, m4);
  double grs = 0, gr2s2 = 0;
  for (const auto& f : standard_figures()) {
    if (f.name == "mixed-bubble") grs = 4 * contract_diagram(f.diagram, t).real();
    if (f.name == "mixed-chain") gr2s2 = 24 * contract_diagram(f.diagram, t).real();
  }
  return {grs, gr2s2};
}

O2Labels o2_labels(const RootConstellation& c2) {
  if (c2.two_j != 2) throw Error(ErrorKind::domain, "expected an O(2) constellation");
  if (c2.scale < 0) return {-c2.scale, antipode(c2.roots[0])};
  return {c2.scale, c2.roots[0]};
}

O4Labels o4_labels(const RootConstellation& c4) {
  if (c4.two_j != 4) throw Error(ErrorKind::domain, "expected an O(4) constellation");
  O4Labels l{c4.scale, c4.roots[0], c4.roots[1], 0, 0};
  if (l.rho < 0) {
    l.rho = -l.rho;
    l.beta = antipode(l.beta);
  }
  l.k = overlap_k(l.alpha, l.beta);
  l.kprime = overlap_kprime(l.alpha, l.beta);
  return l;
}

Branch branch_points(double rho, double k) {
  double k2 = k * k;
  return {-rho * (k2 - 2) / 3, rho * (2 * k2 - 1) / 3, -rho * (k2 + 1) / 3};
}

O4Basic o4_basic_from_roots(double rho, double k) {
  Branch e = branch_points(rho, k);
  return {-(e.e1 * e.e2 + e.e2 * e.e3 + e.e3 * e.e1), e.e1 * e.e2 * e.e3};
}

namespace {

struct Cosines {
  double ab, ag, bg;
  Vector3 na, nb, ng;
};

Cosines cosines(const RootConstellation& c2, const RootConstellation& c4) {
  auto l2 = o2_labels(c2);
  auto l4 = o4_labels(c4);
  Cosines c;
  c.na = unit_vector(l4.alpha);
  c.nb = unit_vector(l4.beta);
  c.ng = unit_vector(l2.gamma);
  c.ab = dot(c.na, c.nb);
  c.ag = dot(c.na, c.ng);
  c.bg = dot(c.nb, c.ng);
  return c;
}

}  // namespace

QFactors q_factors(const RootConstellation& c2, const RootConstellation& c4) {
  Cosines c = cosines(c2, c4);
  double gram = 1 + 2 * c.ab * c.ag * c.bg - c.ab * c.ab - c.ag * c.ag - c.bg * c.bg;
  return {std::max(gram, 0.0), (c.ag + c.bg) * (c.ag + c.bg), (c.ag - c.bg) * (c.ag - c.bg)};
}

double q0sq_tetrahedron(const RootConstellation& c2, const RootConstellation& c4) {
  Cosines c = cosines(c2, c4);
  double vol = dot(c.na, cross(c.nb, c.ng)) / 6;
  return 36 * vol * vol;
}

LambdaFamily lambda_family(const Multiplet& m2, const Multiplet& m4, double lambda) {
  double gs = g_sigma2(m2);
  auto b = o4_basic_invariants(m4);
  auto mx = mixed_invariants(m2, m4);
  double t = lambda / 3;
  double g2 = b.g_rho2 - 3 * mx.g_rho_sigma2 * t + 3 * gs * gs * t * t;
  double g3 = b.g_rho3 - mx.g_rho2_sigma2 * t - 3 * mx.g_rho_sigma2 * gs * t * t + 2 * gs * gs * gs * t * t * t;
  return {g2, g3};
}

LambdaFamily lambda_family_literal(const Multiplet& m2, const Multiplet& m4, double lambda) {
  auto b = o4_basic_invariants(m4 - scaled(product(m2, m2), lambda));
  return {b.g_rho2, b.g_rho3};
}

AngularInvariants angular_invariants(const Multiplet& m2, const Multiplet& m4) {
  double gs = g_sigma2(m2);
  double gr2 = o4_basic_invariants(m4).g_rho2;
  double s2 = max_abs(m2), s4 = max_abs(m4);
  if (gs <= 1e-28 * s2 * s2 || gr2 <= 1e-28 * s4 * s4 || gs == 0.0 || gr2 == 0.0)
    throw Error(ErrorKind::degenerate, "angular invariants need g_sigma2 > 0 and g_rho2 > 0");
  auto mx = mixed_invariants(m2, m4);
  return {mx.g_rho_sigma2 / (std::sqrt(3 * gr2) * gs), -mx.g_rho2_sigma2 / (3 * gr2 * gs)};
}

InvariantSet invariant_set(const Multiplet& m2, const Multiplet& m4) {
  InvariantSet s;
  s.g_sigma2 = g_sigma2(m2);
  auto b = o4_basic_invariants(m4);
  s.g_rho2 = b.g_rho2;
  s.g_rho3 = b.g_rho3;
  auto mx = mixed_invariants(m2, m4);
  s.g_rho_sigma2 = mx.g_rho_sigma2;
  s.g_rho2_sigma2 = mx.g_rho2_sigma2;
  auto ab = angular_invariants(m2, m4);
  s.A = ab.A;
  s.B = ab.B;
  auto q = q_factors(coefficients_to_roots(m2), coefficients_to_roots(m4));
  s.Q0sq = q.Q0sq;
  s.Qplussq = q.Qplussq;
  s.Qminussq = q.Qminussq;
  return s;
}

CriticalRelations critical_relations(const Multiplet& m2, const Multiplet& m4) {
  auto c2 = coefficients_to_roots(m2);
  auto c4 = coefficients_to_roots(m4);
  auto l2 = o2_labels(c2);
  auto l4 = o4_labels(c4);
  auto q = q_factors(c2, c4);
  Branch e = branch_points(l4.rho, l4.k);
  double ei[3] = {e.e1, e.e2, e.e3};
  CriticalRelations r{};
  double s2 = l2.sigma * l2.sigma, p2 = l4.rho * l4.rho;
  for (int i = 0; i < 3; ++i) {
    r.lambda[i] = 3 * ei[i] / s2;
    r.g3_at[i] = lambda_family(m2, m4, r.lambda[i]).g3;
  }
  r.rhs[0] = 0.75 * p2 * e.e1 * q.Qminussq;
  r.rhs[1] = -0.75 * p2 * e.e2 * q.Q0sq;
  r.rhs[2] = 0.75 * p2 * e.e3 * q.Qplussq;
  Cosines c = cosines(c2, c4);
  r.g_rho_sigma2_roots = l4.rho * s2 * (c.ag * c.bg - c.ab / 3);
  r.g_rho2_sigma2_roots =
      o4_basic_from_roots(l4.rho, l4.k).g_rho2 * s2 + 0.25 * p2 * s2 * (q.Q0sq - q.Qplussq - q.Qminussq);
  return r;
}

namespace {

using i128 = __int128;

i128 factorial(int n) {
  if (n < 0) throw Error(ErrorKind::domain, "negative factorial");
  i128 r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  if (tm1 + tm2 != tM) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tJ) % 2 != 0 || (tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0) return 0.0;
  if (tj1 > 8 || tj2 > 8 || tJ > 16) throw Error(ErrorKind::domain, "Clebsch-Gordan supported for j <= 4");
  auto h = [](int twice) { return twice / 2; };
  const int a = h(tj1 + tj2 - tJ), b = h(tj1 - tm1), c = h(tj2 + tm2), d = h(tJ - tj2 + tm1),
            e = h(tJ - tj1 - tm2);
  // exact rational sum over k
  i128 num = 0, den = 1;
  for (int k = 0; k <= a; ++k) {
    if (b - k < 0 || c - k < 0 || d + k < 0 || e + k < 0) continue;
    i128 dk = factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k) * factorial(d + k) *
              factorial(e + k);
    i128 sgn = (k % 2 == 0) ? 1 : -1;
    num = num * dk + sgn * den;
    den = den * dk;
    i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  if (num == 0) return 0.0;
  long double pre = (long double)(tJ + 1) * (long double)factorial(h(tJ + tj1 - tj2)) *
                    (long double)factorial(h(tJ - tj1 + tj2)) * (long double)factorial(a) /
                    (long double)factorial(h(tj1 + tj2 + tJ) + 1);
  pre *= (long double)factorial(h(tJ + tM)) * (long double)factorial(h(tJ - tM)) *
         (long double)factorial(h(tj1 - tm1)) * (long double)factorial(h(tj1 + tm1)) *
         (long double)factorial(h(tj2 - tm2)) * (long double)factorial(h(tj2 + tm2));
  long double s = (long double)num / (long double)den;
  return double(std::sqrt(pre) * s);
}

State couple(const State& a, int tj1, const State& b, int tj2, int tJ) {
  if (a.size() != size_t(tj1 + 1) || b.size() != size_t(tj2 + 1))
    throw Error(ErrorKind::structural, "state dimension mismatch");
  State out(tJ + 1, cplx{});
  for (int tM = -tJ; tM <= tJ; tM += 2) {
    cplx s{};
    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
      int tm2 = tM - tm1;
      if (std::abs(tm2) > tj2) continue;
      double cg = clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM);
      if (cg != 0.0) s += cg * a[(tm1 + tj1) / 2] * b[(tm2 + tj2) / 2];
    }
    out[(tM + tJ) / 2] = s;
  }
  return out;
}

cplx inner(const State& a, const State& b) {
  if (a.size() != b.size()) return cplx{};  // different spins are orthogonal
  cplx s{};
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

std::map<std::string, AmplitudeCheck> amplitude_couplings(const Multiplet& m2, const Multiplet& m4) {
  const State& p2 = m2.coeffs;
  const State& p4 = m4.coeffs;
  double gs = g_sigma2(m2);
  auto b = o4_basic_invariants(m4);
  auto mx = mixed_invariants(m2, m4);
  std::map<std::string, AmplitudeCheck> r;
  r["norm-o2"] = {inner(p2, p2), gs / 2};
  r["norm-o4"] = {inner(p4, p4), b.g_rho2 / 2};
  r["o4|o4xo4"] = {inner(p4, couple(p4, 4, p4, 4, 4)), 9 / (4 * std::sqrt(21.0)) * b.g_rho3};
  r["o2|o2xo4"] = {inner(p2, couple(p2, 2, p4, 4, 2)), -3 / (4 * std::sqrt(15.0)) * mx.g_rho_sigma2};
  r["o4|o2xo2"] = {inner(p4, couple(p2, 2, p2, 2, 4)), mx.g_rho_sigma2 / 4};
  cplx s{};
  for (int tJ = 0; tJ <= 4; tJ += 2) s += inner(couple(p2, 2, p2, 2, tJ), couple(p4, 4, p4, 4, tJ));
  r["o2xo2|o4xo4"] = {s, mx.g_rho2_sigma2 / (4 * std::sqrt(21.0)) - b.g_rho2 * gs / (4 * std::sqrt(15.0))};
  r["orth:o2|o4"] = {inner(p2, p4), 0.0};
  r["orth:o2|o4xo4"] = {inner(p2, couple(p4, 4, p4, 4, 2)), 0.0};
  r["orth:o4|o2xo4"] = {inner(p4, couple(p2, 2, p4, 4, 4)), 0.0};
  r["o2xo2:spin0"] = {couple(p2, 2, p2, 2, 0)[0], -gs / (2 * std::sqrt(3.0))};
  State one = couple(p2, 2, p2, 2, 2);
  r["o2xo2:spin1-norm"] = {std::sqrt(std::abs(inner(one, one))), 0.0};
  return r;
}

}  // namespace hkforge
