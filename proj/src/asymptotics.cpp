#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "hkforge/swann.hpp"

namespace hkforge {

const char* to_string(Regime r) { return r == Regime::q ? "q" : "qprime"; }

Regime regime_from_string(const std::string& s) {
  if (s == "q") return Regime::q;
  if (s == "qprime") return Regime::qprime;
  throw Error(ErrorKind::usage, "regime must be q or qprime, got '" + s + "'");
}

SeriesReport asymptotic_expansion(Regime regime, int order, double r1, double r2, double r2p, double A) {
  if (order < 0 || order > 2) throw Error(ErrorKind::usage, "series order must be 0, 1 or 2");
  SeriesReport s;
  s.regime = regime;
  s.order = order;
  s.r1 = r1;
  s.r2 = r2;
  s.r2p = r2p;
  s.A = A;
  const double r1sq = r1 * r1;
  if (regime == Regime::qprime) {
    const double x = r2p / r2;
    s.small = std::exp(-2 * x);
    s.ba = {{0, 1.0, "1"},
            {1, -288 * (3 - x), "-288(3r2 - r2')/r2"},
            {2, 6912 * (39 - 26 * x + 5 * x * x), "6912(39r2^2 - 26r2r2' + 5r2'^2)/r2^2"}};
    s.k = {{0, 2 * (A - 2.0 / 3) * r1sq / r2 - 6 * A * r1sq / r2p, "2(A - 2/3)r1^2/r2 - 6A r1^2/r2'"},
           {1, A * r1sq / r2p * 144 * (5 - 7 * x + 2 * x * x), "A r1^2/r2' 144(5r2^2 - 7r2r2' + 2r2'^2)/r2^2"},
           {2, -A * r1sq / r2p * 432 * (285 - 678 * x + 416 * x * x - 80 * x * x * x),
            "-A r1^2/r2' 432(285r2^3 - 678r2^2r2' + 416r2r2'^2 - 80r2'^3)/r2^3"}};
  } else {
    s.small = std::exp(-2 * kPi * kPi * r2 / r2p);
    s.ba = {{0, 7.0 / 5, "7/5"}, {1, -504.0 / 5, "-504/5"}, {2, 101808.0 / 5, "101808/5"}};
    s.k = {{0, 2.0 / 5 * (A - 10.0 / 3) * r1sq / r2, "(2/5)(A - 10/3)r1^2/r2"},
           {1, A * r1sq / r2 * 216.0 / 5, "(216/5)A r1^2/r2"},
           {2, -A * r1sq / r2 * 14832.0 / 5, "-(14832/5)A r1^2/r2"}};
  }
  s.ba.resize(order + 1);
  s.k.resize(order + 1);
  for (const auto& t : s.ba) s.ba_sum += t.coeff * std::pow(s.small, t.power);
  for (const auto& t : s.k) s.k_sum += t.coeff * std::pow(s.small, t.power);
  return s;
}

namespace {

// Frame in which the O(4) roots sit at 0 and t on the real axis before a fixed rotation.
const SU2Element& frame() {
  static const SU2Element r = SU2Element::from_euler(0.7, 0.9, 0.3);
  return r;
}

Multiplet o4_with_separation(double t) {
  RootConstellation c{4, 1.0, {mobius_apply(frame(), SpherePoint{0.0, false}), mobius_apply(frame(), SpherePoint{t, false})}};
  return roots_to_coefficients(c);
}

double nome_of(Regime regime, const WeierstrassData& w) { return regime == Regime::q ? w.q : w.q_prime; }

Multiplet o4_at_nome(Regime regime, double nome) {
  auto g = [&](double lt) {
    try {
      return std::log(nome_of(regime, from_multiplet(o4_with_separation(std::exp(lt))))) - std::log(nome);
    } catch (const Error&) {
      return -700.0 - std::log(nome);  // pinched: nome is effectively zero
    }
  };
  // q' -> 0 as the roots merge (t -> 0), q -> 0 as they become antipodal (t -> infinity)
  double a = regime == Regime::qprime ? std::log(1e-9) : 0.0;
  double b = regime == Regime::qprime ? 0.0 : std::log(1e9);
  std::uintmax_t it = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  auto r = boost::math::tools::toms748_solve(g, a, b, tol, it);
  return o4_with_separation(std::exp(0.5 * (r.first + r.second)));
}

Multiplet o2_towards(double theta, double phi) {
  SpherePoint p{std::polar(std::tan(theta / 2), phi), false};
  RootConstellation c{2, 1.0, {mobius_apply(frame(), p)}};
  return roots_to_coefficients(c);
}

double h_of(const Multiplet& m2, const Multiplet& m4, const WeierstrassData& w) {
  InvariantSet inv;
  inv.g_rho2 = w.g2;
  auto mx = mixed_invariants(m2, m4);
  inv.g_rho_sigma2 = mx.g_rho_sigma2;
  inv.g_rho2_sigma2 = mx.g_rho2_sigma2;
  auto d = dual_periods(w);
  return constraint_value(inv, d) / constraint_scale(inv, d);
}

}  // namespace

std::optional<Multiplet> constraint_root_along(const std::function<Multiplet(double)>& family, double lo, double hi,
                                               const Multiplet& m4, int samples) {
  const WeierstrassData w = from_multiplet(m4);
  double prev_s = lo, prev_h = h_of(family(lo), m4, w);
  for (int i = 1; i <= samples; ++i) {
    const double s = lo + (hi - lo) * i / samples;
    const double hs = h_of(family(s), m4, w);
    if ((hs < 0) != (prev_h < 0)) {
      std::uintmax_t it = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(52);
      auto r = boost::math::tools::toms748_solve([&](double u) { return h_of(family(u), m4, w); }, prev_s, s, prev_h,
                                                 hs, tol, it);
      return family(0.5 * (r.first + r.second));
    }
    prev_s = s;
    prev_h = hs;
  }
  return std::nullopt;
}

namespace {

O2O4State resolve(const Multiplet& m2, const Multiplet& m4, double solver_tol) {
  const WeierstrassData w = from_multiplet(m4);
  auto f4 = o4_fields(m4);
  SolverOptions opt;
  opt.tol = solver_tol;
  const double seed = f4.x2 + 1e-3 * std::sqrt(w.g2) * std::min(w.k * w.k, w.kprime * w.kprime);
  return solve_constraint(m2, f4.z2, f4.v2, seed, opt);
}

SU2Element about_axis(const Vector3& n, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {cplx{c, s * n.z}, s * cplx{n.y, n.x}};
}

}  // namespace

std::optional<O2O4State> solve_by_direction(const Multiplet& m2, const Multiplet& m4, double solver_tol) {
  const double r3 = 1 / std::sqrt(3.0);
  for (const Vector3& axis : {Vector3{1, 0, 0}, Vector3{0, 1, 0}, Vector3{0, 0, 1}, Vector3{r3, r3, r3}}) {
    auto fam = [&](double s) { return wigner_rotate(about_axis(axis, s), m2); };
    auto tuned = constraint_root_along(fam, 0.0, 2 * kPi, m4);
    if (!tuned) continue;
    try {
      return resolve(*tuned, m4, solver_tol);
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

SweepPoint solved_point(Regime regime, double nome, double solver_tol) {
  if (!(nome > 0 && nome < 0.04)) throw Error(ErrorKind::domain, "sweep nome must lie in (0, 0.04)");
  const Multiplet m4 = o4_at_nome(regime, nome);
  // q': the root sits near azimuth pi/4 from the merging pair, so scan the azimuth;
  // q: scan the polar angle
  std::vector<std::pair<double, bool>> families;  // fixed value, scanning phi?
  if (regime == Regime::qprime)
    families = {{0.6, true}, {1.1, true}, {0.3, true}, {0.5, false}};
  else
    families = {{0.5, false}, {1.2, false}, {2.0, false}, {0.6, true}};
  for (const auto& [fixed, scan_phi] : families) {
    auto m2_at = [&](double s) { return scan_phi ? o2_towards(fixed, s) : o2_towards(s, fixed); };
    auto tuned = scan_phi ? constraint_root_along(m2_at, 0.0, kPi, m4) : constraint_root_along(m2_at, 0.05, kPi - 0.05, m4);
    if (!tuned) continue;
    SweepPoint p;
    p.state = resolve(*tuned, m4, solver_tol);
    p.x2_seed = o4_fields(m4).x2;
    p.ba = p.state.inv.B / p.state.inv.A;
    p.nome = nome_of(regime, p.state.w);
    return p;
  }
  throw Error(ErrorKind::no_solution, "no O(2) direction satisfies the constraint at this nome");
}

std::vector<double> default_nomes(Regime regime) {
  if (regime == Regime::q) return {1e-3, 2e-3, 4e-3};
  return {3e-6, 1e-5, 3e-5};
}

CoefficientFit fit_asymptotics(Regime regime, const std::vector<double>& nomes) {
  if (nomes.size() != 3) throw Error(ErrorKind::usage, "coefficient fit needs exactly three nomes");
  CoefficientFit f;
  f.regime = regime;
  Eigen::Matrix3d V;
  Eigen::Vector3d y;
  for (int i = 0; i < 3; ++i) {
    auto p = solved_point(regime, nomes[i]);
    f.nomes.push_back(p.nome);
    f.ba.push_back(p.ba);
    const double s = p.nome * p.nome;
    if (regime == Regime::q) {
      V.row(i) << 1.0, s, s * s;
    } else {
      V.row(i) << 1.0, s, -std::log(p.nome) * s;
    }
    y(i) = p.ba;
  }
  Eigen::Vector3d c = V.fullPivLu().solve(y);
  if (regime == Regime::q) {
    f.basis = {"1", "q^2", "q^4"};
    f.expected = {7.0 / 5, -504.0 / 5, 101808.0 / 5};
  } else {
    f.basis = {"1", "q'^2", "ln(1/q') q'^2"};
    f.expected = {1.0, -864.0, 288.0};
  }
  for (int i = 0; i < 3; ++i) {
    f.fitted.push_back(c(i));
    f.rel_error.push_back(std::abs(c(i) - f.expected[i]) / std::abs(f.expected[i]));
  }
  return f;
}

DegenerateReport degenerate_limits(double qprime, double q) {
  DegenerateReport r;
  auto p = solved_point(Regime::qprime, qprime);
  const auto& s = p.state;
  r.qprime = p.nome;
  r.A = s.inv.A;
  r.ba = p.ba;
  auto l4 = o4_labels(coefficients_to_roots(s.m4));
  Vector3 mid = unit_vector(l4.alpha) + unit_vector(l4.beta);
  mid = (1.0 / mid.norm()) * mid;
  const Vector3 g = unit_vector(o2_labels(coefficients_to_roots(s.m2)).gamma);
  const double c = dot(mid, g);
  const Vector3 r1 = o2_to_vector(s.m2);
  const double r1n = r1.norm();
  r.delta = std::acos(std::clamp(c, -1.0, 1.0));
  r.A_zero_order = c * c - 1.0 / 3;
  const double r2 = s.w.r2;
  r.K0 = 2 * (r.A - 2.0 / 3) * r1n * r1n / r2;
  r.K0_sin = -2 * r1n * r1n * std::sin(r.delta) * std::sin(r.delta) / r2;
  // O(2) vector of a multiplet whose root sits at the merged O(4) root
  const SpherePoint pm = mid.z < -1 + 1e-15 ? SpherePoint{0.0, true} : SpherePoint{cplx{mid.x, mid.y} / (1 + mid.z), false};
  Vector3 r2v = o2_to_vector(roots_to_coefficients(RootConstellation{2, 1.0, {pm}}));
  r2v = (r2 / r2v.norm()) * r2v;
  r.K_o2o2 = o2o2_potential(r1, r2v);
  r.K_full = o2o4_potential(s);

  // zero-order ratio when the O(4) roots are exactly antipodal (a pinched torus, so unsolved)
  SpherePoint a = mobius_apply(frame(), SpherePoint{0.0, false});
  // roots {a, -1/conj(a)}: minus the square of an O(2) multiplet
  Multiplet m4 = roots_to_coefficients(RootConstellation{4, 1.0, {a, antipode(a)}});
  auto ab = angular_invariants(o2_towards(0.9, 0.4), m4);
  r.ba_antipodal = ab.B / ab.A;
  r.q_regime_ba = solved_point(Regime::q, q).ba;
  return r;
}

}  // namespace hkforge
