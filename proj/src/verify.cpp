#include "hkforge/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "hkforge/coherent.hpp"
#include "hkforge/contour.hpp"
#include "hkforge/diagram.hpp"
#include "hkforge/elliptic.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/quadrature.hpp"
#include "hkforge/swann.hpp"

namespace hkforge {

// ---- configuration ----

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::usage, "config must be a JSON object");
  static const std::set<std::string> known{"seed", "tolerances", "tolerance_all", "nodes", "series_order", "format"};
  for (auto& [k, v] : j.items())
    if (!known.count(k)) throw Error(ErrorKind::usage, "unknown config key '" + k + "'");
  RunConfig c;
  try {
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances"))
      for (auto& [k, v] : j.at("tolerances").items()) c.tolerances[k] = v.get<double>();
    if (j.contains("tolerance_all")) c.tolerance_all = j.at("tolerance_all").get<double>();
    if (j.contains("nodes")) c.nodes = j.at("nodes").get<int>();
    if (j.contains("series_order")) c.series_order = j.at("series_order").get<int>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::usage, std::string("bad config: ") + e.what());
  }
  validate_run_config(c);
  return c;
}

RunConfig load_run_config(const std::string& path) { return run_config_from_json(load_json_file(path)); }

void apply_environment(RunConfig& cfg) {
  const char* s = std::getenv("HKFORGE_SEED");
  if (!s || !*s) return;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw Error(ErrorKind::usage, std::string("HKFORGE_SEED is not an integer: ") + s);
  cfg.seed = v;
}

void validate_run_config(const RunConfig& cfg) {
  for (auto& [k, v] : cfg.tolerances)
    if (!(v > 0)) throw Error(ErrorKind::usage, "tolerance for " + k + " must be > 0");
  if (cfg.tolerance_all && !(*cfg.tolerance_all > 0)) throw Error(ErrorKind::usage, "tolerance_all must be > 0");
  if (cfg.nodes < 16 || cfg.nodes > (1 << 20)) throw Error(ErrorKind::usage, "nodes must lie in [16, 2^20]");
  if (cfg.series_order < 1 || cfg.series_order > 200) throw Error(ErrorKind::usage, "series_order must lie in [1, 200]");
  if (cfg.format != "json" && cfg.format != "table") throw Error(ErrorKind::usage, "format must be json or table");
}

namespace {

// ---- measurement helpers ----

// Keeps the worst relative error seen, together with the values that produced it.
struct Worst {
  Measure m;
  bool any = false;
  int count = 0;

  void put(double a, double r, std::vector<double> got, std::vector<double> want) {
    ++count;
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    if (!any || r > m.rel_err) {
      m.rel_err = r;
      m.abs_err = a;
      m.computed = std::move(got);
      m.reference = std::move(want);
      any = true;
    }
  }
  void add(double got, double want, double floor = 1e-300) {
    double a = std::abs(got - want);
    put(a, a / std::max(std::abs(want), floor), {got}, {want});
  }
  void add(cplx got, cplx want, double floor = 1e-300) {
    double a = std::abs(got - want);
    put(a, a / std::max(std::abs(want), floor), {got.real(), got.imag()}, {want.real(), want.imag()});
  }
  // an error already measured against its own scale
  void add_scaled(double err, double scale) { put(err, err / scale, {err}, {0.0}); }
  Measure done(const std::string& note = "") {
    if (!note.empty()) m.note = note;
    if (m.note.empty()) m.note = std::to_string(count) + " comparisons";
    return m;
  }
};

Measure count_measure(int violations, int total, const std::string& what) {
  Measure m;
  m.computed = {double(violations)};
  m.reference = {0.0};
  m.abs_err = m.rel_err = violations;
  m.note = std::to_string(violations) + " of " + std::to_string(total) + " " + what;
  return m;
}

ContourOptions contour_opts(const CheckContext& c) {
  ContourOptions o;
  o.nodes = c.cfg.nodes;
  return o;
}

Multiplet rot(const SU2Element& r, const Multiplet& m) { return wigner_rotate(r, m); }

std::vector<double> invariant_values(const Multiplet& m2, const Multiplet& m4) {
  auto s = invariant_set(m2, m4);
  auto l = lambda_family(m2, m4, 0.37);
  return {s.g_sigma2, s.g_rho2, s.g_rho3, s.g_rho_sigma2, s.g_rho2_sigma2, s.A, s.B,
          s.Q0sq, s.Qplussq, s.Qminussq, l.g2, l.g3};
}

std::vector<double> weierstrass_values(const WeierstrassData& w) {
  return {w.g2, w.g3, w.delta, w.e1, w.e2, w.e3, w.omega, w.omega_prime.imag(), w.eta, w.eta_prime.imag(),
          w.q, w.q_prime, w.r2, w.r2_prime};
}

// Natural magnitude of a figure: product of the norms of its vertex tensors.
double figure_scale(const Diagram& d, const Multiplet& m2, const Multiplet& m4) {
  double n2 = std::sqrt(g_sigma2(m2)), n4 = std::sqrt(o4_basic_invariants(m4).g_rho2);
  double s = 1;
  for (auto& v : d.vertices) s *= v.tensor == "o2" ? n2 : v.tensor == "o4" ? n4 : n2 * n2;
  return s;
}

int odd_o2_count(const Diagram& d) {
  int n = 0;
  for (auto& v : d.vertices) n += v.tensor == "o2" ? 1 : v.tensor == "o2sq" ? 2 : 0;
  return n;
}

struct RootConfig {
  double sigma, rho;
  SpherePoint gamma, alpha, beta;
  Multiplet m2, m4;
};

RootConfig random_roots(Rng& rng) {
  RootConfig r;
  r.sigma = 0.5 + std::abs(normal(rng));
  r.rho = 0.5 + std::abs(normal(rng));
  r.gamma = random_sphere_point(rng);
  r.alpha = random_sphere_point(rng);
  r.beta = random_sphere_point(rng);
  r.m2 = roots_to_coefficients({2, r.sigma, {r.gamma}});
  r.m4 = roots_to_coefficients({4, r.rho, {r.alpha, r.beta}});
  return r;
}

SpherePoint random_finite_point(Rng& rng) {
  for (;;) {
    auto p = random_sphere_point(rng);
    if (!p.inf && std::abs(p.z) < 50) return p;
  }
}

double wrap(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a > kPi) a -= 2 * kPi;
  if (a <= -kPi) a += 2 * kPi;
  return a;
}

// Closed forms of the chart-dependent I-family.
struct IClosed {
  cplx I0, I1, I2;
};
IClosed i_closed(const Multiplet& m4) {
  auto w = from_multiplet(m4);
  auto f = o4_fields(m4);
  cplx sz = std::sqrt(f.z2);
  double az = std::abs(f.z2);
  double xp = (f.x2 + 6 * az) / 3, xm = (f.x2 - 6 * az) / 3;
  double vp = (f.v2 / sz).imag(), vm = (f.v2 / sz).real();
  cplx pp = pi_function(w, xp, cplx(0, 2 * az * vp)), pm = pi_function(w, xm, cplx(-2 * az * vm, 0));
  return {2 * w.omega, (pp + pm) / sz, -(2 * w.eta + (xp + xm) * w.omega - cplx(vm, vp) * (pp + pm)) / (2.0 * f.z2)};
}

// Solved O(2)+O(4) states from random data.
std::vector<O2O4State> solved_states(Rng& rng, int want, int max_tries) {
  std::vector<O2O4State> out;
  for (int t = 0; t < max_tries && int(out.size()) < want; ++t) {
    auto m2 = random_o2(rng), m4 = random_o4(rng);
    try {
      if (auto s = solve_by_direction(m2, m4)) out.push_back(*s);
    } catch (const Error&) {
    }
  }
  if (int(out.size()) < want) throw Error(ErrorKind::no_solution, "could not produce enough solved states");
  return out;
}

// ---- checks: multiplet ----

Measure multiplet_examples(CheckContext&) {
  Worst w;
  int bad = 0;
  bad += !validate_reality(make_o2(1.0, 2.0));
  bad += validate_reality(Multiplet{2, {cplx(-1, 0), cplx(2, 1), cplx(-1, 0)}});
  bad += !validate_reality(make_o4(kI, 0.0, 1.0));
  w.add_scaled(bad, 1.0);
  auto a = o2_fields(roots_to_coefficients({2, 2.0, {SpherePoint::at(0)}}));
  w.add(a.z1, 0.0, 1.0);
  w.add(a.x1, 2.0, 1.0);
  auto b = o2_fields(roots_to_coefficients({2, 1.0, {SpherePoint::at(1)}}));
  w.add(b.z1, -0.5, 1.0);
  w.add(b.x1, 0.0, 1.0);
  auto c = o4_fields(roots_to_coefficients({4, 1.0, {SpherePoint::at(0), SpherePoint::at(0)}}));
  w.add(c.x2, 1.0, 1.0);
  w.add(std::abs(c.z2) + std::abs(c.v2), 0.0, 1.0);
  auto back = coefficients_to_roots(make_o4(0.0, 0.0, 1.0));
  w.add(back.scale, 1.0, 1.0);
  for (auto& r : back.roots) w.add(std::abs(r.z) + (r.inf ? 1.0 : 0.0), 0.0, 1.0);
  SU2Element flip{0.0, 1.0};
  auto m = mobius_apply(flip, SpherePoint::at(1));
  w.add(m.z, cplx(-1, 0), 1.0);
  auto v = o2_to_vector(make_o2(1.0, 0.0));
  w.add(v.x, 2.0, 1.0);
  w.add(v.norm(), 2.0, 1.0);
  auto u = o2_to_vector(make_o2(0.0, 2.0));
  w.add(u.z, 2.0, 1.0);
  return w.done();
}

Measure multiplet_round_trip(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    for (int tj : {2, 4, 6}) {
      auto m = random_multiplet(c.rng, tj);
      auto back = roots_to_coefficients(coefficients_to_roots(m));
      w.add_scaled(max_abs_diff(back, m), max_abs(m));
    }
  }
  return w.done();
}

Measure multiplet_fs_isometry(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    auto R = random_rotation(c.rng);
    std::vector<SpherePoint> pts;
    for (int i = 0; i < 4; ++i) {
      pts.push_back(random_sphere_point(c.rng));
      pts.push_back(antipode(pts.back()));
    }
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        double d0 = fubini_study_distance(pts[i], pts[j]);
        double d1 = fubini_study_distance(mobius_apply(R, pts[i]), mobius_apply(R, pts[j]));
        w.add(d1, d0, 1.0);
      }
  }
  return w.done();
}

Measure multiplet_group_action(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 50; ++t) {
    auto R1 = random_rotation(c.rng), R2 = random_rotation(c.rng);
    for (int tj = 1; tj <= 6; ++tj) {
      auto m = random_multiplet(c.rng, tj);
      auto lhs = rot(R2, rot(R1, m));
      auto rhs = rot(compose(R2, R1), m);
      w.add_scaled(max_abs_diff(lhs, rhs), max_abs(m));
    }
  }
  return w.done();
}

Measure multiplet_reality_preserved(CheckContext& c) {
  int bad = 0, total = 0;
  for (int t = 0; t < 100; ++t) {
    auto R = random_rotation(c.rng);
    for (int tj : {2, 4, 6, 8}) {
      ++total;
      bad += !validate_reality(rot(R, random_multiplet(c.rng, tj)));
    }
  }
  return count_measure(bad, total, "rotated multiplets failed the reality test");
}

Measure multiplet_wigner_mobius(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 50; ++t) {
    auto R = random_rotation(c.rng);
    for (int tj : {2, 4}) {
      auto m = random_multiplet(c.rng, tj);
      auto a = rot(R, m);
      auto b = roots_to_coefficients(mobius_apply(R, coefficients_to_roots(m)));
      w.add_scaled(max_abs_diff(a, b), max_abs(m));
    }
  }
  return w.done();
}

Measure multiplet_spin_half(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 50; ++t) {
    auto R = random_rotation(c.rng);
    auto D = wigner_matrix(R, 1);
    // descending-m order of the ascending matrix is the Cayley-Klein matrix
    w.add(D[1][1], R.a, 1.0);
    w.add(D[1][0], R.b, 1.0);
    w.add(D[0][1], -std::conj(R.b), 1.0);
    w.add(D[0][0], std::conj(R.a), 1.0);
    w.add(std::norm(R.a) + std::norm(R.b), 1.0, 1.0);
  }
  return w.done();
}

Measure multiplet_o2_vector(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    auto m = random_o2(c.rng);
    auto v = o2_to_vector(m);
    w.add(v.norm(), std::sqrt(g_sigma2(m)));
    w.add(v.norm(), coefficients_to_roots(m).scale > 0 ? coefficients_to_roots(m).scale
                                                        : -coefficients_to_roots(m).scale);
  }
  return w.done();
}

// ---- checks: coherent ----

Measure coherent_k_complement(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 1000; ++t) {
    auto a = random_sphere_point(c.rng), b = random_sphere_point(c.rng);
    double k = overlap_k(a, b), kp = overlap_kprime(a, b);
    w.add_scaled(std::abs(k * k + kp * kp - 1), 1.0);
  }
  for (auto& [a, b] : std::vector<std::pair<SpherePoint, SpherePoint>>{
           {SpherePoint::infinity(), SpherePoint::at(0)},
           {SpherePoint::infinity(), SpherePoint::at(cplx(0.3, -2))},
           {SpherePoint::infinity(), SpherePoint::infinity()}}) {
    double k = overlap_k(a, b), kp = overlap_kprime(a, b);
    w.add_scaled(std::abs(k * k + kp * kp - 1), 1.0);
  }
  return w.done();
}

Measure coherent_octant(CheckContext&) {
  Worst w;
  std::vector<SpherePoint> pts{SpherePoint::at(0), SpherePoint::at(1), SpherePoint::at(kI)};
  for (int s = 0; s < 3; ++s) {
    std::rotate(pts.begin(), pts.begin() + 1, pts.end());
    w.add(cyclic_phase(pts).phase, kPi / 4, 1.0);
  }
  w.add(spherical_polygon_area({SpherePoint::at(0), SpherePoint::at(1), SpherePoint::at(kI)}), kPi / 2, 1.0);
  return w.done();
}

Measure coherent_antipodal(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 1000; ++t) {
    auto a = random_sphere_point(c.rng);
    w.add_scaled(coherent_overlap(a, antipode(a), 1).modulus, 1.0);
  }
  w.add_scaled(coherent_overlap(SpherePoint::at(0), SpherePoint::infinity(), 1).modulus, 1.0);
  return w.done();
}

Measure coherent_overlap_invariance(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 200; ++t) {
    auto R = random_rotation(c.rng);
    auto a = random_sphere_point(c.rng), b = random_sphere_point(c.rng);
    int tj = 1 + t % 4;
    w.add(coherent_overlap(mobius_apply(R, a), mobius_apply(R, b), tj).modulus,
          coherent_overlap(a, b, tj).modulus, 1.0);
  }
  return w.done();
}

Measure coherent_phase_reversal(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 200; ++t) {
    std::vector<SpherePoint> pts;
    for (int i = 0; i < 3 + t % 3; ++i) pts.push_back(random_finite_point(c.rng));
    auto rev = pts;
    std::reverse(rev.begin(), rev.end());
    w.add_scaled(std::abs(wrap(cyclic_phase(pts).phase + cyclic_phase(rev).phase)), 1.0);
  }
  return w.done();
}

Measure coherent_spin_j(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 200; ++t) {
    auto a = random_sphere_point(c.rng), b = random_sphere_point(c.rng);
    double k = overlap_k(a, b);
    for (int tj = 1; tj <= 8; ++tj) w.add(coherent_overlap(a, b, tj).modulus, std::pow(k, tj), 1.0);
  }
  return w.done();
}

Measure coherent_examples(CheckContext&) {
  Worst w;
  auto z = SpherePoint::at(0), one = SpherePoint::at(1);
  w.add(coherent_overlap(z, one, 1).modulus, 1 / std::sqrt(2.0), 1.0);
  w.add(fubini_study_distance(z, one), kPi / 2, 1.0);
  w.add(fubini_study_distance(one, antipode(one)), kPi, 1.0);
  w.add(fubini_study_distance(one, one), 0.0, 1.0);
  auto f = fubini_study_both(z, one);
  w.add(f.from_k, f.from_kprime, 1.0);
  // three points on a great circle: phase 0 mod pi
  double ph = cyclic_phase({SpherePoint::at(0), SpherePoint::at(0.5), SpherePoint::at(2)}).phase;
  w.add_scaled(std::min(std::abs(wrap(ph)), std::abs(wrap(ph - kPi))), 1.0);
  // real O(2) and coherent O(4) directions
  auto dirs = penrose_factorize(roots_to_coefficients({2, 1.0, {SpherePoint::at(cplx(0.3, 0.4))}}));
  bool found = false;
  for (auto& d : dirs) found |= !d.point.inf && std::abs(d.point.z - cplx(0.3, 0.4)) < 1e-10;
  w.add_scaled(found && dirs.size() == 2 ? 0.0 : 1.0, 1.0);
  Multiplet coh = make_o4(0.0, 0.0, 0.0);
  for (int n = 0; n <= 4; ++n) coh.coeffs[n] = 0.0;
  coh.coeffs[0] = 1.0;  // all roots at one point
  auto cd = penrose_factorize(coh);
  w.add_scaled(cd.size() == 1 && cd[0].multiplicity == 4 ? 0.0 : 1.0, 1.0);
  return w.done();
}

Measure coherent_area_law(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 200; ++t) {
    std::vector<SpherePoint> pts;
    auto base = random_finite_point(c.rng);
    for (int i = 0; i < 3; ++i) pts.push_back(SpherePoint::at(base.z + 0.4 * normal_complex(c.rng)));
    double ph = cyclic_phase(pts).phase, area = spherical_polygon_area(pts);
    w.add_scaled(std::min(std::abs(wrap(ph - area / 2)), std::abs(wrap(ph + area / 2))), 1.0);
  }
  return w.done();
}

Measure coherent_fubini_study(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 500; ++t) {
    auto a = random_sphere_point(c.rng), b = random_sphere_point(c.rng);
    auto f = fubini_study_both(a, b);
    w.add(f.from_k, f.from_kprime, 1.0);
  }
  return w.done();
}

Measure coherent_penrose(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    int tj = 1 + t % 6;
    auto m = random_multiplet(c.rng, tj);
    auto rec = penrose_reconstruct(penrose_factorize(m), tj);
    cplx num{}, den{};
    for (size_t i = 0; i < m.coeffs.size(); ++i) {
      num += std::conj(rec.coeffs[i]) * m.coeffs[i];
      den += std::norm(rec.coeffs[i]);
    }
    cplx s = num / den;
    double err = 0;
    for (size_t i = 0; i < m.coeffs.size(); ++i) err = std::max(err, std::abs(m.coeffs[i] - s * rec.coeffs[i]));
    w.add_scaled(err, max_abs(m));
  }
  return w.done();
}

// ---- checks: invariants ----

Measure invariants_figures(CheckContext& c) {
  Worst w;
  auto figs = standard_figures();
  for (int t = 0; t < 100; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto b4 = o4_basic_invariants(m4);
    auto mx = mixed_invariants(m2, m4);
    BasicValues bv{g_sigma2(m2), b4.g_rho2, b4.g_rho3, mx.g_rho_sigma2, mx.g_rho2_sigma2};
    auto T = standard_tensors(m2, m4);
    for (auto& f : figs) w.add(contract_diagram(f.diagram, T), cplx(f.expected(bv), 0), figure_scale(f.diagram, m2, m4));
  }
  return w.done("100 random pairs x " + std::to_string(figs.size()) + " figures");
}

Measure invariants_odd(CheckContext& c) {
  Worst w;
  int n = 0;
  std::vector<Figure> odd;
  for (auto& f : standard_figures())
    if (odd_o2_count(f.diagram) % 2 == 1) odd.push_back(f);
  for (int t = 0; t < 50; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto T = standard_tensors(m2, m4);
    for (auto& f : odd) {
      w.add_scaled(std::abs(contract_diagram(f.diagram, T)), figure_scale(f.diagram, m2, m4));
      ++n;
    }
    for (int k : {1, 3, 5, 7}) {
      auto d = o2_polygon(k);
      w.add_scaled(std::abs(contract_diagram(d, T)), figure_scale(d, m2, m4));
    }
  }
  return w.done(std::to_string(odd.size()) + " odd figures plus odd polygons, 50 pairs");
}

Measure invariants_diagram_routes(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 50; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    double gs = g_sigma2(m2), g2 = o4_basic_invariants(m4).g_rho2;
    w.add(g_sigma2_diagram(m2), gs, gs);
    auto a = o4_basic_invariants(m4), b = o4_basic_diagram(m4);
    w.add(b.g_rho2, a.g_rho2, g2);
    w.add(b.g_rho3, a.g_rho3, std::pow(g2, 1.5));
    auto x = mixed_invariants(m2, m4), y = mixed_invariants_diagram(m2, m4);
    w.add(y.g_rho_sigma2, x.g_rho_sigma2, std::sqrt(g2) * gs);
    w.add(y.g_rho2_sigma2, x.g_rho2_sigma2, g2 * gs);
  }
  return w.done();
}

Measure invariants_rotation(CheckContext& c) {
  Worst w;
  auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
  auto base = invariant_values(m2, m4);
  double gs = base[0], g2 = base[1];
  // natural scale per entry
  std::vector<double> scale{gs, g2, std::pow(g2, 1.5), std::sqrt(g2) * gs, g2 * gs, 1, 1, 1, 1, 1,
                            std::max(g2, 0.37 * 0.37 * gs * gs), std::pow(std::max(g2, 0.37 * 0.37 * gs * gs), 1.5)};
  for (int t = 0; t < 50; ++t) {
    auto R = random_rotation(c.rng);
    auto v = invariant_values(rot(R, m2), rot(R, m4));
    for (size_t i = 0; i < v.size(); ++i) w.add(v[i], base[i], 1e-3 * scale[i]);
  }
  return w.done("50 rotations, 12 invariants");
}

Measure invariants_critical(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    auto r = random_roots(c.rng);
    auto cr = critical_relations(r.m2, r.m4);
    for (int i = 0; i < 3; ++i) w.add(cr.g3_at[i], cr.rhs[i], std::pow(r.rho, 3));
  }
  return w.done("100 root configurations, scale rho^3");
}

Measure invariants_r1s2(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    auto r = random_roots(c.rng);
    auto cr = critical_relations(r.m2, r.m4);
    w.add(cr.g_rho_sigma2_roots, mixed_invariants(r.m2, r.m4).g_rho_sigma2, r.rho * r.sigma * r.sigma);
  }
  return w.done("100 root configurations, scale rho sigma^2");
}

Measure invariants_r2s2(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    auto r = random_roots(c.rng);
    auto cr = critical_relations(r.m2, r.m4);
    w.add(cr.g_rho2_sigma2_roots, mixed_invariants(r.m2, r.m4).g_rho2_sigma2, std::pow(r.rho * r.sigma, 2));
  }
  return w.done("100 root configurations, scale rho^2 sigma^2");
}

Measure invariants_positivity(CheckContext& c) {
  int bad = 0, total = 0;
  for (int t = 0; t < 1000; ++t) {
    total += 2;
    bad += g_sigma2(random_o2(c.rng)) < 0;
    bad += o4_basic_invariants(random_o4(c.rng)).g_rho2 < 0;
  }
  return count_measure(bad, total, "negative radial invariants");
}

// Number of O(2) and O(4) factors in an amplitude key sets its natural magnitude.
double amplitude_scale(const std::string& key, double n2, double n4) {
  if (key == "norm-o2") return n2 * n2;
  if (key == "norm-o4") return n4 * n4;
  double s = 1;
  for (size_t p = key.find("o2"); p != std::string::npos; p = key.find("o2", p + 2)) s *= n2;
  for (size_t p = key.find("o4"); p != std::string::npos; p = key.find("o4", p + 2)) s *= n4;
  return s;
}

Measure invariants_amplitudes(CheckContext& c, bool orthogonal) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    double n2 = std::sqrt(g_sigma2(m2) / 2), n4 = std::sqrt(o4_basic_invariants(m4).g_rho2 / 2);
    for (auto& [k, v] : amplitude_couplings(m2, m4)) {
      if ((k.rfind("orth:", 0) == 0) != orthogonal) continue;
      w.add(v.computed, v.expected, amplitude_scale(k, n2, n4));
    }
  }
  return w.done();
}

Measure invariants_cauchy_schwarz(CheckContext& c) {
  const double b1 = std::sqrt(2.0);
  const double lo2 = -std::sqrt(7.0 / 5) * (std::sqrt(15.0) - 1), hi2 = std::sqrt(7.0 / 5) * (std::sqrt(15.0) + 1);
  int bad = 0;
  double mn1 = 1e300, mx1 = -1e300, mn2 = 1e300, mx2 = -1e300;
  for (int t = 0; t < 10000; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    double gs = g_sigma2(m2), g2 = o4_basic_invariants(m4).g_rho2;
    auto mx = mixed_invariants(m2, m4);
    double r1 = mx.g_rho_sigma2 / (std::sqrt(g2) * gs), r2 = mx.g_rho2_sigma2 / (g2 * gs);
    bad += r1 < -b1 || r1 > b1 || r2 < lo2 || r2 > hi2;
    mn1 = std::min(mn1, r1), mx1 = std::max(mx1, r1), mn2 = std::min(mn2, r2), mx2 = std::max(mx2, r2);
  }
  auto m = count_measure(bad, 10000, "samples outside the angular bounds");
  m.computed = {double(bad), mn1, mx1, mn2, mx2};
  m.reference = {0.0, -b1, b1, lo2, hi2};
  return m;
}

Measure invariants_examples(CheckContext&) {
  Worst w;
  w.add(g_sigma2(make_o2(0.0, 2.0)), 4.0, 1.0);
  w.add(g_sigma2(make_o2(1.0, 0.0)), 4.0, 1.0);
  auto b = o4_basic_invariants(make_o4(0.0, 0.0, 3.0));
  w.add(b.g_rho2, 3.0, 1.0);
  w.add(b.g_rho3, -2.0, 1.0);
  double rho = 1.7;
  auto br = o4_basic_from_roots(rho, std::sqrt(0.5));
  w.add(br.g_rho2, rho * rho / 4, 1.0);
  w.add(br.g_rho3, 0.0, 1.0);
  // coincident roots: g_rho_sigma2 = (2/3) rho sigma^2
  auto p = SpherePoint::at(cplx(0.2, -0.5));
  auto m2 = roots_to_coefficients({2, 1.3, {p}}), m4 = roots_to_coefficients({4, rho, {p, p}});
  w.add(mixed_invariants(m2, m4).g_rho_sigma2, 2.0 / 3 * rho * 1.3 * 1.3, 1.0);
  auto ang = angular_invariants(m2, m4);
  w.add(ang.A, 2.0 / 3, 1.0);
  w.add(ang.B, ang.A, 1.0);
  // great circle and orthogonal triples
  auto gc = q_factors({2, 1.0, {SpherePoint::at(0.3)}}, {4, 1.0, {SpherePoint::at(-2.0), SpherePoint::at(0.9)}});
  w.add(gc.Q0sq, 0.0, 1.0);
  auto orth = q_factors({2, 1.0, {SpherePoint::at(0)}}, {4, 1.0, {SpherePoint::at(1), SpherePoint::at(kI)}});
  w.add(orth.Q0sq, 1.0, 1.0);
  w.add(orth.Qplussq, 0.0, 1.0);
  w.add(orth.Qminussq, 0.0, 1.0);
  auto lf = lambda_family(make_o2(0.4, 1.1), make_o4(0.3, kI, 0.5), 0.0);
  auto bb = o4_basic_invariants(make_o4(0.3, kI, 0.5));
  w.add(lf.g2, bb.g_rho2, 1.0);
  w.add(lf.g3, bb.g_rho3, 1.0);
  return w.done();
}

Measure invariants_lambda_literal(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 50; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    double lam = normal(c.rng);
    auto a = lambda_family(m2, m4, lam), b = lambda_family_literal(m2, m4, lam);
    double s = std::max(o4_basic_invariants(m4).g_rho2, lam * lam * std::pow(g_sigma2(m2), 2));
    w.add(a.g2, b.g2, s);
    w.add(a.g3, b.g3, std::pow(s, 1.5));
  }
  return w.done();
}

Measure invariants_tetrahedron(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 100; ++t) {
    auto r = random_roots(c.rng);
    auto c2 = coefficients_to_roots(r.m2), c4 = coefficients_to_roots(r.m4);
    w.add(q0sq_tetrahedron(c2, c4), q_factors(c2, c4).Q0sq, 1.0);
  }
  return w.done();
}

Measure invariants_contraction_kernels(CheckContext& c) {
  Worst w;
  auto figs = standard_figures();
  for (int t = 0; t < 10; ++t) {
    auto T = standard_tensors(random_o2(c.rng), random_o4(c.rng));
    for (auto& f : figs) {
      cplx a = contract_diagram_serial(f.diagram, T), b = contract_diagram_parallel(f.diagram, T);
      w.add(b, a, 1.0 + std::abs(a));
    }
  }
  return w.done();
}

// ---- checks: elliptic ----

std::vector<WeierstrassData> elliptic_samples(Rng& rng) {
  std::vector<WeierstrassData> out;
  for (double k : {0.1, 0.3, 0.5, 0.7, 0.9}) out.push_back(from_modulus(1.0, k));
  for (int t = 0; t < 60; ++t) out.push_back(from_multiplet(random_o4(rng)));
  return out;
}

Measure elliptic_legendre(CheckContext& c) {
  Worst w;
  for (auto& d : elliptic_samples(c.rng)) {
    cplx leg = d.omega_prime * d.eta - d.omega * d.eta_prime;
    w.add(leg, cplx(0, kPi / 2));
  }
  return w.done();
}

Measure elliptic_lambert(CheckContext& c) {
  Worst w;
  std::ostringstream skipped;
  skipped << std::scientific << std::setprecision(1);
  for (double k : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    auto d = from_modulus(1.0, k);
    for (bool prime : {false, true}) {
      auto s = lambert_g2_g3_eta(d, prime, c.cfg.series_order);
      w.add(s.eta, d.eta, 1.0);
      // g2, g3 only where the truncation bound is below the target
      if (s.last_term < 1e-13) {
        w.add(s.g2, d.g2, 1.0);
        w.add(s.g3, d.g3, 1.0);
      } else {
        skipped << " k=" << k << (prime ? " q'" : " q") << " (g2 err " << std::abs(s.g2 - d.g2) << ", g3 err "
                << std::abs(s.g3 - d.g3) << ", bound " << s.last_term << ")";
      }
    }
  }
  std::string note = "eta on both branches at every k; g2, g3 where the order-" + std::to_string(c.cfg.series_order) +
                     " truncation bound is < 1e-13";
  if (!skipped.str().empty()) note += "; outside that range:" + skipped.str();
  return w.done(note);
}

Measure elliptic_modular(CheckContext& c) {
  Worst w;
  for (double k : {0.3, 0.5, 0.7}) {
    double rho = 0.5 + std::abs(normal(c.rng));
    auto d = from_modulus(rho, k);
    auto a = lambert_g2_g3_eta(d, false, c.cfg.series_order), b = lambert_g2_g3_eta(d, true, c.cfg.series_order);
    w.add(b.g2, a.g2, rho * rho);
    w.add(b.g3, a.g3, rho * rho * rho);
  }
  return w.done("q-branch vs q'-branch at k in {0.3, 0.5, 0.7}, truncation bound below 1e-11");
}

Measure elliptic_positive(CheckContext& c) {
  int bad = 0;
  for (int t = 0; t < 500; ++t) {
    auto d = from_multiplet(random_o4(c.rng));
    bad += !(d.r2 > 0 && d.r2_prime > 0 && d.q > 0 && d.q < 1 && d.q_prime > 0 && d.q_prime < 1);
  }
  return count_measure(bad, 500, "multiplets with r2, r2' <= 0 or nomes outside (0,1)");
}

Measure elliptic_rotation(CheckContext& c) {
  Worst w;
  auto m4 = random_o4(c.rng);
  auto base = weierstrass_values(from_multiplet(m4));
  double g2 = base[0];
  std::vector<double> scale{g2, std::pow(g2, 1.5), std::pow(g2, 3), std::sqrt(g2), std::sqrt(g2), std::sqrt(g2),
                            1 / std::pow(g2, 0.25), 1 / std::pow(g2, 0.25), std::pow(g2, 0.25), std::pow(g2, 0.25),
                            1, 1, std::pow(g2, 0.25), std::pow(g2, 0.25)};
  for (int t = 0; t < 50; ++t) {
    auto v = weierstrass_values(from_multiplet(rot(random_rotation(c.rng), m4)));
    for (size_t i = 0; i < v.size(); ++i) w.add(v[i], base[i], 1e-3 * scale[i]);
  }
  return w.done("50 rotations of one O(4) multiplet");
}

Measure elliptic_differentials(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 6; ++t) {
    auto d = from_multiplet(random_o4(c.rng));
    auto D = differentials(d);
    double h2 = 1e-5 * std::abs(d.g2), h3 = 1e-5 * std::pow(d.g2, 1.5);
    auto at = [&](double a, double b) { return from_invariants(d.g2 + a, d.g3 + b); };
    auto p2 = at(h2, 0), m2 = at(-h2, 0), p3 = at(0, h3), m3 = at(0, -h3);
    double so = d.omega / d.g2, se = d.eta / d.g2;
    w.add(D.domega_dg2, (p2.omega - m2.omega) / (2 * h2), so);
    w.add(D.deta_dg2, (p2.eta - m2.eta) / (2 * h2), se);
    w.add(D.domega_dg3, (p3.omega - m3.omega) / (2 * h3), d.omega / std::pow(d.g2, 1.5));
    w.add(D.deta_dg3, (p3.eta - m3.eta) / (2 * h3), d.eta / std::pow(d.g2, 1.5));
    // pi(X0) with Y0 on the curve, X0 in each real interval
    double sc = std::sqrt(d.g2);
    for (double X0 : {d.e1 + 0.6 * sc, 0.5 * (d.e2 + d.e3), d.e3 - 0.4 * sc}) {
      auto P = [&](const WeierstrassData& ww, double X) { return pi_function(ww, X, -1); };
      cplx Y0 = curve_y(d, X0, -1);
      auto s = D.dpi(X0, Y0);
      double hx = 1e-5 * sc;
      cplx fx = (P(d, X0 + hx) - P(d, X0 - hx)) / (2 * hx);
      cplx f2 = (P(p2, X0) - P(m2, X0)) / (2 * h2);
      cplx f3 = (P(p3, X0) - P(m3, X0)) / (2 * h3);
      double sp = std::abs(P(d, X0)) + std::abs(Y0) * d.omega;
      w.add(s.dX, fx, sp / sc);
      w.add(s.dg2, f2, sp / d.g2);
      w.add(s.dg3, f3, sp / std::pow(d.g2, 1.5));
    }
  }
  return w.done("central differences, step 1e-5 of the natural scale");
}

Measure elliptic_pi_oracle(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 20; ++t) {
    auto d = from_multiplet(random_o4(c.rng));
    double X0 = d.e1 + (0.1 + std::abs(normal(c.rng))) * std::sqrt(d.g2);
    auto pv = pi_function(d, X0, -1);
    double u0 = abel_map_real(d, X0);
    w.add(pv, cplx(u0 * d.eta - d.omega * weierstrass_zeta(d, u0), 0), 1.0);
  }
  return w.done();
}

Measure elliptic_examples(CheckContext&) {
  Worst w;
  for (double k : {0.2, 0.6, 0.95}) {
    auto d = from_modulus(2.0, k);
    w.add(-(d.e1 * d.e2 + d.e2 * d.e3 + d.e3 * d.e1), d.g2, 1.0);
    w.add(d.e1 * d.e2 * d.e3, d.g3, 1.0);
    w.add(d.e1 + d.e2 + d.e3, 0.0, 1.0);
    auto back = from_invariants(d.g2, d.g3);
    w.add(back.omega, d.omega, 1.0);
    w.add(back.eta, d.eta, 1.0);
  }
  auto small = from_modulus(1.0, 1e-8);
  w.add(small.omega, kPi / 2, 1.0);
  int errs = 0;
  try {
    from_multiplet(make_o4(0.0, 0.0, 3.0));
  } catch (const Error& e) {
    errs += e.kind() == ErrorKind::pinched;
  }
  auto d = from_modulus(1.0, 0.5);
  try {
    pi_function(d, d.e2, cplx(1, 0));
  } catch (const Error& e) {
    errs += e.kind() == ErrorKind::pole_on_cycle;
  }
  try {
    pi_function(d, d.e1 + 1, cplx(0, 0));
  } catch (const Error& e) {
    errs += e.kind() == ErrorKind::domain;
  }
  w.add_scaled(3 - errs, 1.0);
  return w.done();
}

// ---- checks: contour ----

Measure contour_o2(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 20; ++t) {
    auto m2 = random_o2(c.rng);
    w.add(integrate_o2_invariant(m2, contour_opts(c)), 2 / o2_labels(coefficients_to_roots(m2)).sigma);
  }
  w.add(integrate_o2_invariant(roots_to_coefficients({2, 2.0, {SpherePoint::at(cplx(0.4, 0.1))}}), contour_opts(c)), 1.0);
  return w.done();
}

Measure contour_periods(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 20; ++t) {
    auto m4 = random_o4(c.rng);
    auto d = from_multiplet(m4);
    auto P = o4_periods(m4, contour_opts(c));
    w.add(P.Ia, cplx(2 * d.K / std::sqrt(d.rho), 0));
    w.add(P.Ib, cplx(0, 2 * d.Kp / std::sqrt(d.rho)));
  }
  return w.done();
}

Measure contour_mixed(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 20; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto c2 = coefficients_to_roots(m2), c4 = coefficients_to_roots(m4);
    auto l2 = o2_labels(c2);
    auto l4 = o4_labels(c4);
    auto Q = q_factors(c2, c4);
    auto M = mixed_integrals(m2, m4, contour_opts(c));
    double s = l2.sigma / l4.rho, k = l4.k, kp = l4.kprime;
    double scale = s * s / std::pow(k * kp, 4);
    w.add(M.I0 * M.I0, cplx(-s * s * Q.Q0sq / std::pow(k * kp, 4), 0), scale);
    w.add(M.Iplus * M.Iplus, cplx(s * s * Q.Qplussq / std::pow(k, 4), 0), scale);
    w.add(M.Iminus * M.Iminus, cplx(s * s * Q.Qminussq / std::pow(kp, 4), 0), scale);
  }
  return w.done();
}

Measure contour_i_family(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 20; ++t) {
    auto m4 = random_o4(c.rng);
    auto F = i1_family(m4, contour_opts(c));
    auto cl = i_closed(m4);
    w.add(F.I0, cl.I0);
    w.add(F.I1, cl.I1);
    w.add(F.I2, cl.I2);
  }
  return w.done();
}

Measure contour_winding(CheckContext& c) {
  int bad = 0, total = 0;
  for (int t = 0; t < 10; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto c2 = coefficients_to_roots(m2), c4 = coefficients_to_roots(m4);
    auto p2 = polynomial(m2), p4 = polynomial(m4);
    for (auto kind : {ContourKind::gamma, ContourKind::gamma_a, ContourKind::gamma_b, ContourKind::gamma_0,
                      ContourKind::gamma_plus, ContourKind::gamma_minus}) {
      auto con = build_contour(kind, c2, c4);
      for (auto& l : con.loops) {
        ++total;
        int w1 = winding_number(l, l.focus1);
        if (l.ellipse) {
          int w2 = winding_number(l, l.focus2);
          bad += !(std::abs(w1) == 1 && w1 == w2 && enclosed_zero_count(l, p4) == 2);
        } else {
          const auto& p = kind == ContourKind::gamma ? p2 : p4;
          bad += !(std::abs(w1) == 1 && enclosed_zero_count(l, p) == 1);
        }
      }
    }
  }
  return count_measure(bad, total, "loops with the wrong winding or enclosed zero count");
}

std::vector<cplx> contour_values(const Multiplet& m2, const Multiplet& m4, const ContourOptions& o) {
  std::vector<cplx> v;
  v.push_back(integrate_o2_invariant(m2, o));
  auto P = o4_periods(m4, o);
  v.push_back(P.Ia);
  v.push_back(P.Ib);
  auto M = mixed_integrals(m2, m4, o);
  v.push_back(M.I0 * M.I0);
  v.push_back(M.Iplus * M.Iplus);
  v.push_back(M.Iminus * M.Iminus);
  return v;
}

Measure contour_rotation(CheckContext& c) {
  Worst w;
  auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
  auto o = contour_opts(c);
  auto base = contour_values(m2, m4, o);
  cplx i0 = i1_family(m4, o).I0;
  for (int t = 0; t < 50; ++t) {
    auto R = random_rotation(c.rng);
    auto v = contour_values(rot(R, m2), rot(R, m4), o);
    for (size_t i = 0; i < v.size(); ++i) w.add(v[i], base[i]);
    w.add(i1_family(rot(R, m4), o).I0, i0);
  }
  return w.done("50 rotations: O(2) integral, periods, mixed squares, I0");
}

Measure contour_deformation(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 5; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto o = contour_opts(c);
    auto big = o;
    big.size = 2.0;
    auto a = contour_values(m2, m4, o), b = contour_values(m2, m4, big);
    for (size_t i = 0; i < a.size(); ++i) w.add(b[i], a[i]);
    auto fa = i1_family(m4, o), fb = i1_family(m4, big);
    w.add(fb.I1, fa.I1);
    w.add(fb.I2, fa.I2);
    w.add(f_uh_quadrature(m2, m4, big), f_uh_quadrature(m2, m4, o));
  }
  return w.done("loop size doubled");
}

Measure contour_convergence(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 5; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto o = contour_opts(c);
    o.tol = 1.0;  // accept the first level: the value at exactly o.nodes
    auto fine = o;
    fine.nodes = 2 * o.nodes;
    auto a = contour_values(m2, m4, o), b = contour_values(m2, m4, fine);
    for (size_t i = 0; i < a.size(); ++i) w.add(b[i], a[i]);
  }
  return w.done("default nodes vs doubled nodes");
}

Measure contour_kernels(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 5; ++t) {
    auto m4 = random_o4(c.rng);
    auto con = build_contour(ContourKind::gamma_a, std::nullopt, coefficients_to_roots(m4));
    auto& l = con.loops[0];
    auto s = sample_loop_serial(l, 4096), p = sample_loop_parallel(l, 4096);
    double d = 0;
    for (size_t i = 0; i < s.z.size(); ++i)
      d = std::max({d, std::abs(s.z[i] - p.z[i]), std::abs(s.sqrt_p[i] - p.sqrt_p[i])});
    w.add_scaled(d, 1.0);
    auto f = [](cplx z, cplx sp) { return 1.0 / (z * sp); };
    cplx a = trapezoid_serial(s, f), b = trapezoid_parallel(s, f);
    w.add(b, a);
    std::vector<cplx> vals(5000);
    for (auto& v : vals) v = normal_complex(c.rng);
    cplx ss = periodic_sum_serial(vals), sp = periodic_sum_parallel(vals);
    w.add(sp, ss, 1.0);
  }
  return w.done("serial vs OpenMP kernels");
}

Measure contour_examples(CheckContext& c) {
  Worst w;
  // rho = 4 and a small modulus: the period on the short cycle tends to pi/2
  auto m4 = roots_to_coefficients({4, 4.0, {SpherePoint::at(0.0), SpherePoint::at(100.0)}});
  auto P = o4_periods(m4, contour_opts(c));
  auto d = from_multiplet(m4);
  w.add(P.Ia, cplx(2 * d.K / std::sqrt(d.rho), 0));
  w.add(P.Ib, cplx(0, 2 * d.Kp / std::sqrt(d.rho)));
  double small = std::min(d.k, d.kprime);
  cplx short_period = d.k < d.kprime ? P.Ia : P.Ib / kI;
  w.add(short_period.real(), kPi / 2 * (1 + small * small / 4), 1.0);
  // gamma on the great circle through alpha, beta: I(Gamma_0) = 0
  auto m2 = roots_to_coefficients({2, 1.0, {SpherePoint::at(0.5)}});
  auto m4b = roots_to_coefficients({4, 1.0, {SpherePoint::at(-1.5), SpherePoint::at(0.2)}});
  auto M = mixed_integrals(m2, m4b, contour_opts(c));
  w.add_scaled(std::abs(M.I0), std::abs(M.Iplus) + std::abs(M.Iminus));
  // symmetric gamma: Q- = 0 -> I(Gamma-) = 0
  auto sym = roots_to_coefficients({2, 1.0, {SpherePoint::at(cplx(0, 0.7))}});
  auto m4c = roots_to_coefficients({4, 1.0, {SpherePoint::at(0.4), SpherePoint::at(-0.4)}});
  auto Q = q_factors(coefficients_to_roots(sym), coefficients_to_roots(m4c));
  auto Ms = mixed_integrals(sym, m4c, contour_opts(c));
  double qs = std::abs(Q.Q0sq) + std::abs(Q.Qplussq) + std::abs(Q.Qminussq);
  double is = std::abs(Ms.I0) + std::abs(Ms.Iplus) + std::abs(Ms.Iminus);
  w.add_scaled(std::abs(Q.Qminussq) / qs + std::abs(Ms.Iminus) / is, 1.0);
  int errs = 0;
  try {
    build_contour(ContourKind::gamma_b, std::nullopt,
                  RootConstellation{4, 1.0, {SpherePoint::at(0.3), SpherePoint::at(0.3)}});
  } catch (const Error& e) {
    errs += e.kind() == ErrorKind::near_degenerate;
  }
  w.add_scaled(1 - errs, 1.0);
  return w.done();
}

// ---- checks: swann ----

Measure swann_o2o2_quadrature(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 10; ++t) {
    auto m1 = random_o2(c.rng), m2 = random_o2(c.rng);
    auto s = o2o2_state(m1, m2);
    cplx q = o2o2_f_quadrature(m1, m2, contour_opts(c));
    w.add(q, cplx(s.F, 0), std::sqrt(g_sigma2(m1)) * std::sqrt(g_sigma2(m1) / g_sigma2(m2)));
  }
  return w.done();
}

Measure swann_o2o2_legendre(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 50; ++t) {
    auto m1 = random_o2(c.rng), m2 = random_o2(c.rng);
    auto s = o2o2_state(m1, m2);
    double scale = s.r1.norm2() / s.r2.norm();
    w.add(o2o2_legendre(s.z1, s.x1, s.z2, s.x2), o2o2_potential(s.r1, s.r2), scale);
    w.add(s.K, o2o2_potential(s.r1, s.r2), scale);
  }
  w.add(o2o2_potential({1, 0, 0}, {0, 0, 1}), -2.0, 1.0);
  w.add(o2o2_potential({1, 2, 3}, {2, 4, 6}), 0.0, 1.0);
  return w.done();
}

Measure swann_o2o2_higgs(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 20; ++t) {
    Vector3 r[2];
    for (auto& v : r) v = {normal(c.rng), normal(c.rng), normal(c.rng)};
    auto H = o2o2_higgs(r[0], r[1]);
    double h = 1e-5;
    double g[2][2][2][3];  // finite-difference gradients d phi_kj / d r_i, component a
    for (int i = 0; i < 2; ++i)
      for (int a = 0; a < 3; ++a) {
        Vector3 p[2] = {r[0], r[1]}, m[2] = {r[0], r[1]};
        double* pc = a == 0 ? &p[i].x : a == 1 ? &p[i].y : &p[i].z;
        double* mc = a == 0 ? &m[i].x : a == 1 ? &m[i].y : &m[i].z;
        *pc += h, *mc -= h;
        auto Hp = o2o2_higgs(p[0], p[1]), Hm = o2o2_higgs(m[0], m[1]);
        for (int k = 0; k < 2; ++k)
          for (int j = 0; j < 2; ++j) g[i][k][j][a] = (Hp.phi[k][j] - Hm.phi[k][j]) / (2 * h);
      }
    double scale = 0;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
          for (int a = 0; a < 3; ++a) scale = std::max(scale, std::abs(g[i][k][j][a]));
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j) {
          const Vector3& cl = H.grad[i][k][j];
          double cv[3] = {cl.x, cl.y, cl.z};
          for (int a = 0; a < 3; ++a) {
            w.add(g[i][k][j][a], g[k][i][j][a], scale);  // Bogomol'nyi symmetry
            w.add(cv[a], g[i][k][j][a], scale);
          }
        }
    // Phi = -(1/2) Hessian of F in (x1, x2)
    auto m1 = make_o2(cplx(r[0].x, r[0].y) / 2.0, r[0].z), m2 = make_o2(cplx(r[1].x, r[1].y) / 2.0, r[1].z);
    auto s = o2o2_state(m1, m2);
    auto Hs = o2o2_higgs(s.r1, s.r2);
    double hx = 1e-5;
    auto dp1 = o2o2_x_derivatives(s.z1, s.x1 + hx, s.z2, s.x2), dm1 = o2o2_x_derivatives(s.z1, s.x1 - hx, s.z2, s.x2);
    auto dp2 = o2o2_x_derivatives(s.z1, s.x1, s.z2, s.x2 + hx), dm2 = o2o2_x_derivatives(s.z1, s.x1, s.z2, s.x2 - hx);
    double hess[2][2] = {{(dp1.dF_dx1 - dm1.dF_dx1) / (2 * hx), (dp2.dF_dx1 - dm2.dF_dx1) / (2 * hx)},
                         {(dp1.dF_dx2 - dm1.dF_dx2) / (2 * hx), (dp2.dF_dx2 - dm2.dF_dx2) / (2 * hx)}};
    double ps = std::abs(Hs.phi[0][0]) + std::abs(Hs.phi[1][1]);
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) w.add(-0.5 * hess[k][j], Hs.phi[k][j], ps);
  }
  return w.done("finite differences, step 1e-5");
}

Measure swann_o2o4_quadrature(CheckContext& c) {
  Worst w;
  double imag = 0;
  for (int t = 0; t < 8; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    double F = o2o4_F(m2, m4);
    cplx q = f_uh_quadrature(m2, m4, contour_opts(c));
    double scale = g_sigma2(m2) / std::pow(o4_basic_invariants(m4).g_rho2, 0.25);
    w.add(q.real(), F, scale);
    imag = std::max(imag, std::abs(q.imag()) / scale);
    w.add_scaled(std::abs(q.imag()), scale);
  }
  std::ostringstream s;
  s << "largest imaginary part of the quadrature " << std::scientific << std::setprecision(2) << imag;
  return w.done(s.str());
}

Measure swann_o2o4_gradients(CheckContext& c) {
  Worst w;
  int fallback = 0;
  for (int t = 0; t < 8; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto g = o2o4_gradients(m2, m4), f = o2o4_gradients_fd(m2, m4);
    fallback += g.fallback;
    double s = std::max({std::abs(f.dF_dx1), std::abs(f.dF_dv2), std::abs(f.dF_dx2)});
    w.add(g.dF_dx1, f.dF_dx1, s);
    w.add(g.dF_dv2, f.dF_dv2, s);
    w.add(g.dF_dx2, f.dF_dx2, s);
    w.add(dfdx2_quadrature(m2, m4, contour_opts(c)), cplx(g.dF_dx2, 0), s);
  }
  return w.done("closed forms vs central differences; " + std::to_string(fallback) + " finite-difference fallbacks");
}

Measure swann_o2o4_legendre(CheckContext& c) {
  Worst w;
  auto states = solved_states(c.rng, 4, 24);
  for (auto& s : states) w.add(s.K, o2o4_potential(s), std::abs(o2o4_potential(s)));
  return w.done("4 states solved for dF/dx2 = 0");
}

Measure swann_homogeneity(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 6; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto a = o2o4_state(m2, m4), b = o2o4_state(scaled(m2, 2), scaled(m4, 4));
    w.add(b.F, 2 * a.F, std::abs(a.F));
    w.add(b.K, 2 * a.K, std::abs(a.K));
    double h = 1e-3;
    double dF = (o2o4_F(scaled(m2, 1 + h), scaled(m4, (1 + h) * (1 + h))) -
                 o2o4_F(scaled(m2, 1 - h), scaled(m4, (1 - h) * (1 - h)))) /
                (2 * h);
    w.add(dF, a.F, std::abs(a.F));
  }
  auto s = solved_states(c.rng, 2, 16);
  for (auto& st : s) {
    auto b = o2o4_state(scaled(st.m2, 2), scaled(st.m4, 4));
    double K = o2o4_potential(st);
    w.add(o2o4_potential_compact(b.inv, b.dual), 2 * K, std::abs(K));
  }
  return w.done("lambda = 2 on F and K, d/dlambda at 1, and compact K at solved states");
}

Measure swann_jacobi(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 20; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto s = o2o4_state(m2, m4);
    double km = o2o4_potential_mixed(s.inv, s.dual, s.aux.x_plus + s.aux.x_minus);
    w.add(km, s.K, std::abs(s.F));
  }
  return w.done("pi-free potential vs Legendre assembly at unsolved states");
}

Measure swann_darboux(CheckContext& c) {
  Worst w;
  for (int t = 0; t < 200; ++t) {
    cplx u2 = normal_complex(c.rng), z2 = normal_complex(c.rng);
    auto d = to_darboux(u2, z2);
    w.add(d.U2, u2 * std::sqrt(z2), 1.0);
    w.add(d.Z2, 2.0 * std::sqrt(z2), 1.0);
    cplx u, z;
    from_darboux(d, u, z);
    w.add(u, u2, 1.0);
    w.add(z, z2, 1.0);
  }
  return w.done();
}

Measure swann_u1(CheckContext& c) {
  // F sees the O(2) multiplet only through (z1, x1); its Legendre dual u1 carries no
  // imaginary part and K cannot depend on one.
  Worst w;
  for (int t = 0; t < 10; ++t) {
    auto m2 = random_o2(c.rng), m4 = random_o4(c.rng);
    auto s = o2o4_state(m2, m4);
    w.add_scaled(std::abs(s.u1.imag()), 1.0);
    auto f = o2_fields(m2);
    w.add(o2o4_F(make_o2(f.z1, f.x1), m4), s.F, std::abs(s.F));
  }
  return w.done("structural: no Im u1 parameter exists");
}

Measure swann_rotation(CheckContext& c) {
  Worst w;
  auto m1 = random_o2(c.rng), m2 = random_o2(c.rng);
  double K22 = o2o2_state(m1, m2).K;
  auto st = solved_states(c.rng, 1, 16)[0];
  double K = o2o4_potential(st);
  for (int t = 0; t < 50; ++t) {
    auto R = random_rotation(c.rng);
    w.add(o2o2_state(rot(R, m1), rot(R, m2)).K, K22, std::abs(K22));
    auto r = o2o4_state(rot(R, st.m2), rot(R, st.m4));
    w.add(o2o4_potential_compact(r.inv, r.dual), K, std::abs(K));
    w.add(r.K, K, std::abs(K));
  }
  return w.done("50 rotations: O(2)+O(2) K, O(2)+O(4) compact and Legendre K at a solved state");
}

Measure swann_fit(CheckContext&, Regime r) {
  auto f = fit_asymptotics(r, default_nomes(r));
  Measure m;
  m.computed = f.fitted;
  m.reference = f.expected;
  size_t gate = r == Regime::q ? 2 : 3;  // q regime: the 7/5 and -504/5 coefficients
  for (size_t i = 0; i < gate; ++i) {
    if (f.rel_error[i] >= m.rel_err) {
      m.rel_err = f.rel_error[i];
      m.abs_err = std::abs(f.fitted[i] - f.expected[i]);
    }
  }
  std::ostringstream s;
  s << "basis";
  for (auto& b : f.basis) s << " " << b;
  s << "; nomes";
  for (double n : f.nomes) s << " " << n;
  if (r == Regime::q) s << "; third coefficient rel err " << std::scientific << std::setprecision(2) << f.rel_error[2];
  m.note = s.str();
  return m;
}

Measure swann_degenerate(CheckContext&) {
  auto d = degenerate_limits();
  Measure m;
  m.computed = {d.K0, d.A, d.ba};
  m.reference = {d.K_o2o2, d.A_zero_order, 1.0};
  m.abs_err = std::abs(d.K0 - d.K_o2o2);
  m.rel_err = m.abs_err / std::abs(d.K_o2o2);
  std::ostringstream s;
  s << std::setprecision(6) << "q'=" << d.qprime << ", A - (cos^2 delta - 1/3) = " << d.A - d.A_zero_order
    << ", B/A = " << d.ba << ", antipodal zero-order B/A = " << d.ba_antipodal << ", small-q B/A = " << d.q_regime_ba;
  m.note = s.str();
  return m;
}

Measure swann_series(CheckContext&) {
  Worst w;
  for (auto r : {Regime::q, Regime::qprime}) {
    double nome = r == Regime::q ? 2e-3 : 1e-5;
    auto p = solved_point(r, nome);
    auto& s = p.state;
    double r1 = std::sqrt(s.inv.g_sigma2);
    auto rep = asymptotic_expansion(r, 2, r1, s.w.r2, s.w.r2_prime, s.inv.A);
    w.add(rep.ba_sum, p.ba, 1.0);
    double K = o2o4_potential(s);
    w.add(rep.k_sum, K, std::abs(K));
  }
  return w.done("order-2 series vs solved states at q = 2e-3 and q' = 1e-5");
}

Measure swann_examples(CheckContext&) {
  Worst w;
  int errs = 0;
  try {
    o2o2_higgs({1, 0, 0}, {0, 0, 0});
  } catch (const Error& e) {
    errs += e.kind() == ErrorKind::degenerate;
  }
  try {
    o2o4_F(make_o2(0.3, 1.0), make_o4(0.0, cplx(0.2, 0.1), 1.0));
  } catch (const Error& e) {
    errs += e.kind() == ErrorKind::chart;
  }
  try {
    o2o4_potential(o2o4_state(make_o2(0.3, 1.0), make_o4(0.5, cplx(0.2, 0.1), 1.0)));
  } catch (const Error& e) {
    errs += e.kind() == ErrorKind::domain;
  }
  w.add_scaled(3 - errs, 1.0);
  for (auto r : {Regime::q, Regime::qprime}) {
    auto p = solved_point(r, r == Regime::q ? 1e-3 : 1e-6);
    w.add(p.ba, r == Regime::q ? 1.4 : 1.0, 1.0);
  }
  return w.done();
}

// ---- checks: cli ----

Measure cli_determinism(CheckContext& c) {
  RunConfig cfg = c.cfg;
  cfg.tolerance_all.reset();
  auto a = report_to_json(run_verification("coherent", cfg)).dump();
  auto b = report_to_json(run_verification("coherent", cfg)).dump();
  auto ta = report_to_table(run_verification("multiplet", cfg)), tb = report_to_table(run_verification("multiplet", cfg));
  return count_measure((a != b) + (ta != tb), 2, "repeated runs with differing bytes");
}

Measure cli_registry(CheckContext&) {
  int bad = 0;
  std::set<std::string> covered, names;
  std::set<std::string> req(required_properties().begin(), required_properties().end());
  std::set<std::string> mods(module_names().begin(), module_names().end());
  std::set<int> crit;
  for (auto& s : check_registry()) {
    bad += s.anchor.empty() || !mods.count(s.module) || !names.insert(s.name).second || !(s.tol > 0);
    for (auto& p : s.properties) {
      bad += !req.count(p);
      covered.insert(p);
    }
    for (int k : s.criteria) {
      bad += k < 1 || k > 10;
      crit.insert(k);
    }
  }
  for (auto& p : req) bad += !covered.count(p);
  bad += crit.size() != 10;
  return count_measure(bad, int(check_registry().size() + req.size()), "registry problems");
}

Measure cli_exit_codes(CheckContext&) {
  int bad = 0;
  bad += exit_code_for(ErrorKind::usage) != 2;
  bad += exit_code_for(ErrorKind::structural) != 2;
  for (auto k : {ErrorKind::degenerate, ErrorKind::pinched, ErrorKind::near_degenerate, ErrorKind::chart,
                 ErrorKind::no_solution, ErrorKind::pole_on_cycle, ErrorKind::convergence})
    bad += exit_code_for(k) != 3;
  RunConfig bad_cfg;
  try {
    run_config_from_json(Json{{"tolerances", {{"x", -1.0}}}});
    ++bad;
  } catch (const Error& e) {
    bad += e.kind() != ErrorKind::usage;
  }
  try {
    multiplet_from_json(Json{{"j", 1}, {"coeffs", Json::array({Json::array({1, 0})})}});
    ++bad;
  } catch (const Error& e) {
    bad += exit_code_for(e.kind()) != 2;
  }
  return count_measure(bad, 12, "exit-code or config-validation mismatches");
}

// ---- registry ----

CheckSpec spec(std::string name, std::string anchor, std::string module, std::vector<int> crit,
               std::vector<std::string> props, double tol, std::function<Measure(CheckContext&)> run) {
  return {std::move(name), std::move(anchor), std::move(module), std::move(crit), std::move(props), tol, std::move(run)};
}

std::vector<CheckSpec> build_registry() {
  std::vector<CheckSpec> r;
  // multiplet
  r.push_back(spec("multiplet.examples", "reality condition and root-form expansion examples", "multiplet", {}, {},
                   1e-12, multiplet_examples));
  r.push_back(spec("multiplet.round-trip", "coefficient and root forms are equivalent local forms", "multiplet", {},
                   {"multiplet.round-trip"}, 1e-10, multiplet_round_trip));
  r.push_back(spec("multiplet.fs-isometry", "Mobius action preserves Fubini-Study distances", "multiplet", {},
                   {"multiplet.fs-isometry"}, 1e-12, multiplet_fs_isometry));
  r.push_back(spec("multiplet.group-action", "Wigner rotation composes as a group action", "multiplet", {},
                   {"multiplet.group-action"}, 1e-10, multiplet_group_action));
  r.push_back(spec("multiplet.reality-preserved", "rotations preserve the reality condition", "multiplet", {},
                   {"multiplet.reality-preserved"}, 0.5, multiplet_reality_preserved));
  r.push_back(spec("multiplet.wigner-vs-mobius", "rotating roots rotates the multiplet", "multiplet", {}, {}, 1e-9,
                   multiplet_wigner_mobius));
  r.push_back(spec("multiplet.spin-half-matrix", "spin-1/2 representation is the Cayley-Klein matrix", "multiplet",
                   {}, {}, 1e-14, multiplet_spin_half));
  r.push_back(spec("multiplet.o2-vector", "O(2) multiplet as an SO(3) vector of length sigma", "multiplet", {}, {},
                   1e-10, multiplet_o2_vector));
  // coherent
  r.push_back(spec("coherent.k-complement", "overlap norm and chordal distance: k^2 + k'^2 = 1", "coherent", {10},
                   {"coherent.k-complement"}, 1e-14, coherent_k_complement));
  r.push_back(spec("coherent.octant-phase", "cyclic phase of the octant triangle is half its area", "coherent", {10},
                   {}, 1e-12, coherent_octant));
  r.push_back(spec("coherent.antipodal-overlap", "antipodal coherent states are orthogonal", "coherent", {10}, {},
                   1e-14, coherent_antipodal));
  r.push_back(spec("coherent.overlap-invariance", "overlap modulus is rotation invariant", "coherent", {},
                   {"coherent.overlap-invariance"}, 1e-12, coherent_overlap_invariance));
  r.push_back(spec("coherent.phase-reversal", "reversed polygon has the opposite cyclic phase", "coherent", {},
                   {"coherent.phase-reversal"}, 1e-12, coherent_phase_reversal));
  r.push_back(spec("coherent.spin-j-overlap", "spin-j overlap modulus is k^{2j}", "coherent", {},
                   {"coherent.spin-j-modulus"}, 1e-12, coherent_spin_j));
  r.push_back(spec("coherent.examples", "overlap, distance and principal-direction examples", "coherent", {}, {},
                   1e-12, coherent_examples));
  r.push_back(spec("coherent.area-law", "cyclic phase equals half the enclosed area", "coherent", {}, {}, 1e-10,
                   coherent_area_law));
  r.push_back(spec("coherent.fubini-study", "distance from k agrees with distance from k'", "coherent", {}, {}, 1e-7,
                   coherent_fubini_study));
  r.push_back(spec("coherent.penrose-round-trip", "principal spinors rebuild the section up to scale", "coherent", {},
                   {}, 1e-8, coherent_penrose));
  // invariants
  r.push_back(spec("invariants.figure-reductions", "diagram reductions of polygon and mixed figures", "invariants",
                   {1}, {"invariants.diagram-reductions"}, 1e-11, invariants_figures));
  r.push_back(spec("invariants.odd-o2-vanish", "figures with an odd number of O(2) vertices vanish", "invariants",
                   {1}, {"invariants.odd-o2-vanish"}, 1e-12, invariants_odd));
  r.push_back(spec("invariants.diagram-routes", "closed-form invariants equal their defining figures", "invariants",
                   {1}, {}, 1e-11, invariants_diagram_routes));
  r.push_back(spec("invariants.contraction-kernels", "serial and parallel contraction agree", "invariants", {1}, {},
                   1e-13, invariants_contraction_kernels));
  r.push_back(spec("invariants.rotation-invariance", "invariants and the lambda family are SU(2) invariant",
                   "invariants", {2}, {"invariants.rotation-invariance"}, 1e-10, invariants_rotation));
  r.push_back(spec("invariants.critical-couplings", "g3 at lambda = 3 e_i / sigma^2 in terms of Q factors",
                   "invariants", {5}, {}, 1e-10, invariants_critical));
  r.push_back(spec("invariants.r1s2-relation", "g_rho_sigma2 from root data", "invariants", {5}, {}, 1e-10,
                   invariants_r1s2));
  r.push_back(spec("invariants.r2s2-relation", "g_rho2_sigma2 = g_rho2 g_sigma2 + rho^2 sigma^2 Q combination / 4",
                   "invariants", {5}, {"invariants.r2s2-relation"}, 1e-10, invariants_r2s2));
  r.push_back(spec("invariants.positivity", "radial invariants are non-negative", "invariants", {},
                   {"invariants.positivity"}, 0.5, invariants_positivity));
  r.push_back(spec("invariants.amplitudes", "invariants as spin-coupling amplitudes", "invariants", {6}, {}, 1e-11,
                   [](CheckContext& c) { return invariants_amplitudes(c, false); }));
  r.push_back(spec("invariants.orthogonality", "vanishing spin-coupling amplitudes", "invariants", {6}, {}, 1e-12,
                   [](CheckContext& c) { return invariants_amplitudes(c, true); }));
  r.push_back(spec("invariants.cauchy-schwarz", "angular invariants obey Cauchy-Schwarz bounds", "invariants", {6},
                   {}, 0.5, invariants_cauchy_schwarz));
  r.push_back(spec("invariants.examples", "closed-form invariant examples", "invariants", {}, {}, 1e-12,
                   invariants_examples));
  r.push_back(spec("invariants.lambda-literal", "lambda family equals invariants of eta4 - lambda eta2^2",
                   "invariants", {}, {}, 1e-11, invariants_lambda_literal));
  r.push_back(spec("invariants.q0-tetrahedron", "Q0^2 as a squared tetrahedron volume", "invariants", {}, {}, 1e-10,
                   invariants_tetrahedron));
  // elliptic
  r.push_back(spec("elliptic.legendre", "Legendre relation eta' omega - eta omega' = -i pi / 2", "elliptic", {3},
                   {"elliptic.legendre"}, 1e-12, elliptic_legendre));
  r.push_back(spec("elliptic.lambert-series", "Lambert series in q and q' against AGM values", "elliptic", {3}, {},
                   1e-12, elliptic_lambert));
  r.push_back(spec("elliptic.differentials", "derivatives of omega, eta and pi with respect to g2, g3, X0",
                   "elliptic", {3}, {}, 1e-6, elliptic_differentials));
  r.push_back(spec("elliptic.modular-invariance", "g2, g3 agree between the q and q' expansions", "elliptic", {},
                   {"elliptic.modular-invariance"}, 1e-11, elliptic_modular));
  r.push_back(spec("elliptic.positive-radii", "r2, r2' > 0 and nomes in (0, 1)", "elliptic", {},
                   {"elliptic.positive-radii"}, 0.5, elliptic_positive));
  r.push_back(spec("elliptic.rotation-invariance", "Weierstrass data of a rotated multiplet", "elliptic", {2},
                   {"elliptic.rotation-invariance"}, 1e-10, elliptic_rotation));
  r.push_back(spec("elliptic.pi-oracle", "pi function as u0 eta - omega zeta(u0)", "elliptic", {}, {}, 1e-10,
                   elliptic_pi_oracle));
  r.push_back(spec("elliptic.examples", "branch-point symmetric functions and error cases", "elliptic", {}, {}, 1e-12,
                   elliptic_examples));
  // contour
  r.push_back(spec("contour.o2-integral", "O(2) invariant integral equals 2 / sigma", "contour", {4}, {}, 1e-7,
                   contour_o2));
  r.push_back(spec("contour.periods", "O(4) periods 2K/sqrt(rho) and 2iK'/sqrt(rho)", "contour", {4}, {}, 1e-7,
                   contour_periods));
  r.push_back(spec("contour.mixed-squares", "squared mixed integrals in terms of Q factors", "contour", {4}, {}, 1e-7,
                   contour_mixed));
  r.push_back(spec("contour.i-family", "I0, I1, I2 against closed forms with pi(x+-)", "contour", {4}, {}, 1e-7,
                   contour_i_family));
  r.push_back(spec("contour.winding", "loop windings by the argument principle", "contour", {},
                   {"contour.winding"}, 0.5, contour_winding));
  r.push_back(spec("contour.rotation-invariance", "contour integrals under simultaneous rotation", "contour", {2},
                   {"contour.rotation-invariance"}, 1e-9, contour_rotation));
  r.push_back(spec("contour.deformation", "doubling loop size leaves integrals unchanged", "contour", {},
                   {"contour.deformation"}, 1e-10, contour_deformation));
  r.push_back(spec("contour.convergence", "halving the trapezoid step leaves integrals unchanged", "contour", {},
                   {"contour.convergence"}, 1e-10, contour_convergence));
  r.push_back(spec("contour.kernels", "serial and parallel trapezoid agree", "contour", {4}, {}, 1e-13,
                   contour_kernels));
  r.push_back(spec("contour.examples", "small-k period, geodesic and symmetric configurations", "contour", {}, {},
                   1e-7, contour_examples));
  // swann
  r.push_back(spec("swann.o2o2-quadrature", "O(2)+O(2) F closed form against contour quadrature", "swann", {7}, {},
                   1e-9, swann_o2o2_quadrature));
  r.push_back(spec("swann.o2o2-legendre", "K = -2 |r1 x r2|^2 / r2^3 from the Legendre transform", "swann", {7}, {},
                   1e-9, swann_o2o2_legendre));
  r.push_back(spec("swann.o2o2-higgs", "Higgs matrix and Bogomol'nyi integrability", "swann", {7}, {}, 1e-7,
                   swann_o2o2_higgs));
  r.push_back(spec("swann.o2o4-quadrature", "O(2)+O(4) F closed form against contour quadrature", "swann", {8}, {},
                   1e-7, swann_o2o4_quadrature));
  r.push_back(spec("swann.o2o4-gradients", "dF/dx1, dF/dv2, dF/dx2 closed forms", "swann", {8}, {}, 1e-6,
                   swann_o2o4_gradients));
  r.push_back(spec("swann.o2o4-legendre", "compact hyperkahler potential against the Legendre assembly", "swann",
                   {8}, {}, 1e-8, swann_o2o4_legendre));
  r.push_back(spec("swann.homogeneity", "weight-1 homogeneity of F and K", "swann", {8}, {"swann.homogeneity"},
                   1e-10, swann_homogeneity));
  r.push_back(spec("swann.jacobi-cancellation", "pi(x+-) terms cancel from the potential", "swann", {},
                   {"swann.jacobi-cancellation"}, 1e-8, swann_jacobi));
  r.push_back(spec("swann.darboux-round-trip", "Darboux coordinates U2 = u2 sqrt(z2), Z2 = 2 sqrt(z2)", "swann", {},
                   {"swann.darboux-round-trip"}, 1e-12, swann_darboux));
  r.push_back(spec("swann.u1-isometry", "tri-holomorphic isometry shifting Im u1", "swann", {},
                   {"swann.u1-isometry"}, 1e-13, swann_u1));
  r.push_back(spec("swann.rotation-invariance", "both potentials under simultaneous rotation", "swann", {2},
                   {"swann.rotation-invariance"}, 1e-9, swann_rotation));
  r.push_back(spec("swann.fit-q", "B/A coefficients 7/5 and -504/5 in the q regime", "swann", {9}, {}, 1e-3,
                   [](CheckContext& c) { return swann_fit(c, Regime::q); }));
  r.push_back(spec("swann.fit-qprime", "B/A coefficients 1 and -288(3 - r2'/r2) in the q' regime", "swann", {9}, {},
                   1e-3, [](CheckContext& c) { return swann_fit(c, Regime::qprime); }));
  r.push_back(spec("swann.degenerate-limit", "K0 = -2 r1^2 sin^2 delta / r2 matches the O(2)+O(2) potential",
                   "swann", {9}, {}, 1e-6, swann_degenerate));
  r.push_back(spec("swann.series", "order-2 expansions of B/A and K at solved states", "swann", {}, {}, 1e-6,
                   swann_series));
  r.push_back(spec("swann.examples", "error cases and limiting B/A values", "swann", {}, {}, 1e-3, swann_examples));
  // cli
  r.push_back(spec("cli.determinism", "fixed seed and config give identical report bytes", "cli", {},
                   {"cli.determinism"}, 0.5, cli_determinism));
  r.push_back(spec("cli.registry", "every check has an anchor and every property is covered", "cli", {},
                   {"cli.anchors"}, 0.5, cli_registry));
  r.push_back(spec("cli.exit-codes", "exit-code scheme and config validation", "cli", {}, {}, 0.5, cli_exit_codes));
  std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.name < b.name; });
  return r;
}

CheckResult run_one(const CheckSpec& s, const RunConfig& cfg) {
  CheckResult out;
  out.name = s.name;
  out.anchor = s.anchor;
  out.module = s.module;
  out.criteria = s.criteria;
  out.properties = s.properties;
  out.tol = s.tol;
  if (auto it = cfg.tolerances.find(s.name); it != cfg.tolerances.end()) out.tol = it->second;
  if (cfg.tolerance_all) out.tol = *cfg.tolerance_all;
  CheckContext ctx{cfg, make_rng(cfg.seed, s.name)};
  try {
    Measure m = s.run(ctx);
    out.computed = std::move(m.computed);
    out.reference = std::move(m.reference);
    out.abs_err = m.abs_err;
    out.rel_err = m.rel_err;
    out.note = std::move(m.note);
    out.pass = m.rel_err <= out.tol;
  } catch (const Error& e) {
    out.pass = false;
    out.rel_err = out.abs_err = std::numeric_limits<double>::infinity();
    out.note = std::string("error (") + to_string(e.kind()) + "): " + e.what();
  } catch (const std::exception& e) {
    out.pass = false;
    out.rel_err = out.abs_err = std::numeric_limits<double>::infinity();
    out.note = std::string("error: ") + e.what();
  }
  return out;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> r = build_registry();
  return r;
}

const std::vector<std::string>& required_properties() {
  static const std::vector<std::string> p{
      "multiplet.round-trip",         "multiplet.fs-isometry",       "multiplet.group-action",
      "multiplet.reality-preserved",  "coherent.k-complement",       "coherent.overlap-invariance",
      "coherent.phase-reversal",      "coherent.spin-j-modulus",     "invariants.rotation-invariance",
      "invariants.diagram-reductions", "invariants.odd-o2-vanish",   "invariants.r2s2-relation",
      "invariants.positivity",        "elliptic.legendre",           "elliptic.modular-invariance",
      "elliptic.positive-radii",      "elliptic.rotation-invariance", "contour.winding",
      "contour.rotation-invariance",  "contour.deformation",         "contour.convergence",
      "swann.rotation-invariance",    "swann.homogeneity",           "swann.u1-isometry",
      "swann.darboux-round-trip",     "swann.jacobi-cancellation",   "cli.determinism",
      "cli.anchors"};
  return p;
}

const std::vector<std::string>& module_names() {
  static const std::vector<std::string> m{"multiplet", "coherent", "invariants", "elliptic", "contour", "swann", "cli"};
  return m;
}

VerificationReport run_checks(const std::string& label, const CheckFilter& keep, const RunConfig& cfg) {
  validate_run_config(cfg);
  std::vector<const CheckSpec*> chosen;
  for (auto& s : check_registry())
    if (keep(s)) chosen.push_back(&s);
  VerificationReport rep;
  rep.suite = label;
  rep.seed = cfg.seed;
  rep.checks.resize(chosen.size());
  // dynamic schedule: check costs differ by orders of magnitude
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < int(chosen.size()); ++i) rep.checks[i] = run_one(*chosen[i], cfg);
  for (auto& c : rep.checks) (c.pass ? rep.passed : rep.failed)++;
  return rep;
}

VerificationReport run_verification(const std::string& suite, const RunConfig& cfg) {
  if (suite == "all") return run_checks(suite, [](const CheckSpec&) { return true; }, cfg);
  auto& m = module_names();
  if (std::find(m.begin(), m.end(), suite) == m.end())
    throw Error(ErrorKind::usage, "unknown suite '" + suite + "' (all or a module name)");
  return run_checks(suite, [&](const CheckSpec& s) { return s.module == suite; }, cfg);
}

VerificationReport run_criterion(int criterion, const RunConfig& cfg) {
  if (criterion < 1 || criterion > 10) throw Error(ErrorKind::usage, "criterion must lie in 1..10");
  return run_checks("criterion-" + std::to_string(criterion),
                    [&](const CheckSpec& s) {
                      return std::find(s.criteria.begin(), s.criteria.end(), criterion) != s.criteria.end();
                    },
                    cfg);
}

Json report_to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (auto& c : r.checks) {
    Json comp = Json::array(), ref = Json::array();
    for (double v : c.computed) comp.push_back(number(v));
    for (double v : c.reference) ref.push_back(number(v));
    checks.push_back({{"name", c.name},
                      {"anchor", c.anchor},
                      {"module", c.module},
                      {"criteria", c.criteria},
                      {"properties", c.properties},
                      {"computed", comp},
                      {"reference", ref},
                      {"abs_error", number(c.abs_err)},
                      {"rel_error", number(c.rel_err)},
                      {"tolerance", c.tol},
                      {"pass", c.pass},
                      {"note", c.note}});
  }
  return {{"suite", r.suite},
          {"seed", r.seed},
          {"checks", checks},
          {"summary", {{"total", r.checks.size()}, {"passed", r.passed}, {"failed", r.failed}}}};
}

std::string report_to_table(const VerificationReport& r) {
  std::ostringstream o;
  o << "suite " << r.suite << "  seed " << r.seed << "\n";
  o << std::left << std::setw(34) << "check" << std::setw(6) << "pass" << std::setw(12) << "rel_err" << std::setw(10)
    << "tol"
    << "anchor\n";
  for (auto& c : r.checks) {
    o << std::left << std::setw(34) << c.name << std::setw(6) << (c.pass ? "ok" : "FAIL") << std::scientific
      << std::setprecision(2) << std::setw(12) << c.rel_err << std::setw(10) << c.tol << c.anchor << "\n";
    if (!c.pass) o << "    " << c.note << "\n";
  }
  o << r.passed << " passed, " << r.failed << " failed\n";
  return o.str();
}

std::string format_report(const VerificationReport& r, const std::string& format) {
  if (format == "table") return report_to_table(r);
  if (format == "json") return report_to_json(r).dump(2) + "\n";
  throw Error(ErrorKind::usage, "format must be json or table");
}

}  // namespace hkforge
