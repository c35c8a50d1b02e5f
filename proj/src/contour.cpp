#include "hkforge/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "hkforge/invariants.hpp"

namespace hkforge {

const char* to_string(ContourKind k) {
  switch (k) {
    case ContourKind::gamma: return "gamma";
    case ContourKind::gamma_a: return "gamma_a";
    case ContourKind::gamma_b: return "gamma_b";
    case ContourKind::gamma_0: return "gamma_0";
    case ContourKind::gamma_plus: return "gamma_plus";
    case ContourKind::gamma_minus: return "gamma_minus";
  }
  return "?";
}

ContourKind contour_kind_from_string(const std::string& s) {
  for (auto k : {ContourKind::gamma, ContourKind::gamma_a, ContourKind::gamma_b, ContourKind::gamma_0,
                 ContourKind::gamma_plus, ContourKind::gamma_minus})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::usage, "unknown contour kind '" + s + "'");
}

cplx loop_point(const Loop& l, double theta) {
  if (l.ellipse) return l.center + l.half_focal * std::cosh(cplx{l.mu, theta});
  return l.center + l.radius * std::exp(kI * theta);
}

int winding_number(const Loop& l, const SpherePoint& p, int samples) {
  if (p.inf) return 0;
  double total = 0;
  cplx prev = loop_point(l, 0.0) - p.z;
  for (int i = 1; i <= samples; ++i) {
    cplx cur = loop_point(l, 2 * kPi * i / samples) - p.z;
    total += std::arg(cur / prev);
    prev = cur;
  }
  return int(std::lround(total / (2 * kPi)));
}

int enclosed_zero_count(const Loop& l, const std::vector<cplx>& poly, int samples) {
  double total = 0;
  cplx prev = eval_polynomial(poly, loop_point(l, 0.0));
  for (int i = 1; i <= samples; ++i) {
    cplx cur = eval_polynomial(poly, loop_point(l, 2 * kPi * i / samples));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return int(std::lround(total / (2 * kPi)));
}

namespace {

inline void node(const Loop& l, double theta, cplx& z, cplx& dz, cplx& root) {
  if (l.ellipse) {
    cplx s{l.mu, theta};
    cplx sh = std::sinh(s);
    z = l.center + l.half_focal * std::cosh(s);
    dz = kI * l.half_focal * sh;
    cplx outer = l.lead;
    for (auto o : l.outer_roots) outer *= (z - o);
    root = std::sqrt(outer);  // principal; continuity fixed afterwards
  } else {
    cplx e = std::exp(kI * theta);
    z = l.center + l.radius * e;
    dz = kI * l.radius * e;
    root = 1.0;
  }
}

// Continuity of the outer square root along the loop, then sqrt(P) = h sinh(s) sqrt(outer).
void track(const Loop& l, LoopSamples& s, int n) {
  if (!l.ellipse) return;
  for (int i = 1; i < n; ++i)
    if (std::abs(s.sqrt_p[i] - s.sqrt_p[i - 1]) > std::abs(s.sqrt_p[i] + s.sqrt_p[i - 1])) s.sqrt_p[i] = -s.sqrt_p[i];
  if (n > 1 && std::abs(s.sqrt_p[0] - s.sqrt_p[n - 1]) > std::abs(s.sqrt_p[0] + s.sqrt_p[n - 1]))
    throw Error(ErrorKind::near_degenerate, "square-root branch does not close along the loop (cut crossing)");
  for (int i = 0; i < n; ++i) {
    double theta = 2 * kPi * i / n;
    s.sqrt_p[i] *= l.half_focal * std::sinh(cplx{l.mu, theta});
  }
}

}  // namespace

LoopSamples sample_loop_serial(const Loop& l, int n) {
  LoopSamples s{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n)};
  for (int i = 0; i < n; ++i) node(l, 2 * kPi * i / n, s.z[i], s.dz[i], s.sqrt_p[i]);
  track(l, s, n);
  return s;
}

LoopSamples sample_loop_parallel(const Loop& l, int n) {
  LoopSamples s{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n)};
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) node(l, 2 * kPi * i / n, s.z[i], s.dz[i], s.sqrt_p[i]);
  track(l, s, n);
  return s;
}

cplx trapezoid_serial(const LoopSamples& s, const LoopIntegrand& f, int stride) {
  const int n = int(s.z.size());
  cplx acc{};
  int count = 0;
  for (int i = 0; i < n; i += stride, ++count) acc += f(s.z[i], s.sqrt_p[i]) * s.dz[i];
  return acc * (2 * kPi / count);
}

cplx trapezoid_parallel(const LoopSamples& s, const LoopIntegrand& f, int stride) {
  const std::int64_t n = std::int64_t(s.z.size());
  const std::int64_t m = (n + stride - 1) / stride;
  const std::int64_t block = 256;
  const std::int64_t nb = (m + block - 1) / block;
  std::vector<cplx> part(nb);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    cplx acc{};
    const std::int64_t hi = std::min(m, (b + 1) * block);
    for (std::int64_t k = b * block; k < hi; ++k) {
      const std::int64_t i = k * stride;
      acc += f(s.z[i], s.sqrt_p[i]) * s.dz[i];
    }
    part[b] = acc;
  }
  // fixed-order compensated reduction of the block partials
  cplx sum{}, comp{};
  for (auto p : part) {
    cplx y = p - comp;
    cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum * (2 * kPi / double(m));
}

LoopIntegral integrate_loop(const Loop& l, const LoopIntegrand& f, const ContourOptions& opt) {
  int n = std::max(16, opt.nodes);
  while (true) {
    LoopSamples s = opt.parallel ? sample_loop_parallel(l, n) : sample_loop_serial(l, n);
    cplx full = opt.parallel ? trapezoid_parallel(s, f, 1) : trapezoid_serial(s, f, 1);
    cplx half = opt.parallel ? trapezoid_parallel(s, f, 2) : trapezoid_serial(s, f, 2);
    // floor the relative test with the L1 size of the integrand so vanishing integrals converge
    double l1 = 0;
    for (int i = 0; i < n; i += std::max(1, n / 256)) l1 += std::abs(f(s.z[i], s.sqrt_p[i]) * s.dz[i]);
    l1 *= 2 * kPi / ((n + std::max(1, n / 256) - 1) / std::max(1, n / 256));
    double change = std::abs(full - half);
    if (change <= opt.tol * std::max(std::abs(full), l1)) return {full, n, change};
    if (n >= opt.max_nodes)
      throw Error(ErrorKind::convergence, "contour quadrature did not converge at " + std::to_string(n) + " nodes");
    n *= 2;
  }
}

namespace {

std::string where(const SpherePoint& p) {
  if (p.inf) return "inf";
  return "(" + std::to_string(p.z.real()) + "," + std::to_string(p.z.imag()) + ")";
}

void require_finite(const std::vector<SpherePoint>& pts) {
  for (const auto& p : pts)
    if (p.inf) throw Error(ErrorKind::chart, "a designated root lies at infinity in this chart");
}

double elliptic_radius(cplx c, cplx h, cplx e) { return std::acosh((e - c) / h).real(); }

Loop make_ellipse(const SpherePoint& p, const SpherePoint& q, const std::vector<SpherePoint>& outer, cplx lead,
                  const std::vector<cplx>& excluded, const ContourOptions& opt) {
  Loop l;
  l.ellipse = true;
  l.focus1 = p;
  l.focus2 = q;
  l.center = 0.5 * (p.z + q.z);
  l.half_focal = 0.5 * (q.z - p.z);
  double scale = 1 + std::abs(p.z) + std::abs(q.z);
  if (std::abs(l.half_focal) < opt.clearance * scale)
    throw Error(ErrorKind::near_degenerate, "branch points " + where(p) + " and " + where(q) + " coincide");
  double mu_min = std::numeric_limits<double>::infinity();
  for (auto e : excluded) mu_min = std::min(mu_min, elliptic_radius(l.center, l.half_focal, e));
  if (mu_min < opt.clearance)
    throw Error(ErrorKind::near_degenerate, "cut " + where(p) + "-" + where(q) + " passes too close to another root");
  l.mu = opt.size * std::min(0.45 * mu_min, 1.5);
  for (const auto& o : outer) l.outer_roots.push_back(o.z);
  l.lead = lead;
  return l;
}

Loop make_circle(const SpherePoint& p, const std::vector<cplx>& others, const ContourOptions& opt, double fallback) {
  Loop l;
  l.focus1 = p;
  l.center = p.z;
  double d = std::numeric_limits<double>::infinity();
  for (auto o : others) d = std::min(d, std::abs(o - p.z));
  if (!std::isfinite(d)) {
    l.radius = opt.size * fallback;
    return l;
  }
  if (d < opt.clearance * (1 + std::abs(p.z)))
    throw Error(ErrorKind::near_degenerate, "pole " + where(p) + " too close to another singular point");
  l.radius = opt.size * 0.45 * d;
  return l;
}

}  // namespace

Contour build_contour(ContourKind kind, const std::optional<RootConstellation>& c2,
                      const std::optional<RootConstellation>& c4, const ContourOptions& opt) {
  if (!(opt.size > 0 && opt.size < 2.2)) throw Error(ErrorKind::usage, "contour size multiplier must lie in (0, 2.2)");
  Contour c;
  c.kind = kind;
  c.samples = opt.nodes;
  if (kind == ContourKind::gamma) {
    if (!c2) throw Error(ErrorKind::usage, "contour gamma needs an O(2) constellation");
    auto l = o2_labels(*c2);
    SpherePoint A = antipode(l.gamma);
    require_finite({l.gamma});
    std::vector<cplx> others;
    if (!A.inf) others.push_back(A.z);
    c.loops.push_back(make_circle(l.gamma, others, opt, 1 + std::abs(l.gamma.z)));
    return c;
  }
  if (!c4) throw Error(ErrorKind::usage, "this contour needs an O(4) constellation");
  auto l = o4_labels(*c4);
  SpherePoint A = antipode(l.alpha), B = antipode(l.beta);
  require_finite({l.alpha, l.beta, A, B});
  if (kind == ContourKind::gamma_a || kind == ContourKind::gamma_b) {
    cplx lead = polynomial(roots_to_coefficients(*c4))[4];
    if (lead == cplx{}) throw Error(ErrorKind::chart, "leading coefficient vanishes in this chart");
    std::vector<std::pair<SpherePoint, SpherePoint>> cuts;
    if (kind == ContourKind::gamma_a)
      cuts = {{l.alpha, B}, {l.beta, A}};
    else
      cuts = {{l.alpha, l.beta}, {A, B}};
    const std::vector<SpherePoint> all{l.alpha, l.beta, A, B};
    for (const auto& [p, q] : cuts) {
      std::vector<SpherePoint> outer;
      std::vector<cplx> excluded;
      // outer roots are the two not used as foci
      auto same = [](const SpherePoint& a, const SpherePoint& b) { return a.z == b.z && a.inf == b.inf; };
      int used_p = 0, used_q = 0;
      for (const auto& r : all) {
        if (!used_p && same(r, p)) { used_p = 1; continue; }
        if (!used_q && same(r, q)) { used_q = 1; continue; }
        outer.push_back(r);
        excluded.push_back(r.z);
      }
      if (opt.exclude_origin) excluded.push_back(cplx{});
      Loop lp = make_ellipse(p, q, outer, lead, excluded, opt);
      lp.weight = 0.5;
      c.loops.push_back(lp);
    }
    return c;
  }
  std::vector<SpherePoint> enclosed;
  switch (kind) {
    case ContourKind::gamma_0: enclosed = {l.alpha, A}; break;
    case ContourKind::gamma_plus: enclosed = {l.alpha, l.beta}; break;
    default: enclosed = {l.alpha, B}; break;
  }
  const std::vector<SpherePoint> poles{l.alpha, l.beta, A, B};
  for (const auto& p : enclosed) {
    std::vector<cplx> others;
    bool skipped = false;
    for (const auto& q : poles) {
      if (!skipped && q.z == p.z) { skipped = true; continue; }
      others.push_back(q.z);
    }
    c.loops.push_back(make_circle(p, others, opt, 1.0));
  }
  return c;
}

SU2Element chart_rotation(const std::vector<SpherePoint>& points, double max_modulus) {
  auto worst = [&](const SU2Element& r) {
    double m = 0;
    for (const auto& p : points) {
      SpherePoint q = mobius_apply(r, p);
      m = std::max(m, q.inf ? std::numeric_limits<double>::infinity() : std::abs(q.z));
    }
    return m;
  };
  SU2Element best;
  double bw = worst(best);
  if (bw <= max_modulus) return best;
  for (int i = 1; i <= 48; ++i) {
    SU2Element r = SU2Element::from_euler(0.61 * i, 0.35 + 0.0637 * i, 0.29 * i);
    double w = worst(r);
    if (w < bw) {
      bw = w;
      best = r;
    }
  }
  return best;
}

namespace {

std::vector<SpherePoint> all_roots_o4(const RootConstellation& c4) {
  return {c4.roots[0], c4.roots[1], antipode(c4.roots[0]), antipode(c4.roots[1])};
}

// Oriented sum over the loops of a branch-cut contour; each loop's sign is set
// by the companion period integral (real part positive for a-loops, imaginary for b).
std::vector<cplx> branch_loop_values(const Contour& c, const std::vector<LoopIntegrand>& fs, bool b_cycle,
                                     const ContourOptions& opt) {
  std::vector<cplx> out(fs.size(), cplx{});
  LoopIntegrand period = [](cplx, cplx sp) { return 1.0 / (2.0 * sp); };
  for (const auto& l : c.loops) {
    cplx p = integrate_loop(l, period, opt).value;
    double sgn = b_cycle ? (p.imag() >= 0 ? 1.0 : -1.0) : (p.real() >= 0 ? 1.0 : -1.0);
    for (size_t i = 0; i < fs.size(); ++i) out[i] += l.weight * sgn * integrate_loop(l, fs[i], opt).value;
  }
  return out;
}

}  // namespace

double integrate_o2_invariant(const Multiplet& m2, const ContourOptions& opt) {
  auto c2 = coefficients_to_roots(m2);
  auto lab = o2_labels(c2);
  SU2Element r = chart_rotation({lab.gamma, antipode(lab.gamma)});
  Multiplet mr = wigner_rotate(r, m2);
  auto cr = coefficients_to_roots(mr);
  auto poly = polynomial(mr);
  Contour c = build_contour(ContourKind::gamma, cr, std::nullopt, opt);
  LoopIntegrand f = [&](cplx z, cplx) { return 1.0 / eval_polynomial(poly, z); };
  cplx v = integrate_loop(c.loops[0], f, opt).value / (kPi * kI);
  if (std::abs(v.imag()) > 1e-8 * std::abs(v))
    throw Error(ErrorKind::convergence, "O(2) invariant integral has a non-negligible imaginary part");
  return v.real();
}

Periods o4_periods(const Multiplet& m4, const ContourOptions& opt) {
  auto c4 = coefficients_to_roots(m4);
  SU2Element r = chart_rotation(all_roots_o4(c4));
  auto cr = coefficients_to_roots(wigner_rotate(r, m4));
  LoopIntegrand f = [](cplx, cplx sp) { return 1.0 / (2.0 * sp); };
  Contour a = build_contour(ContourKind::gamma_a, std::nullopt, cr, opt);
  Contour b = build_contour(ContourKind::gamma_b, std::nullopt, cr, opt);
  return {branch_loop_values(a, {f}, false, opt)[0], branch_loop_values(b, {f}, true, opt)[0]};
}

MixedIntegrals mixed_integrals(const Multiplet& m2, const Multiplet& m4, const ContourOptions& opt) {
  auto c4 = coefficients_to_roots(m4);
  SU2Element r = chart_rotation(all_roots_o4(c4));
  Multiplet r2 = wigner_rotate(r, m2), r4 = wigner_rotate(r, m4);
  auto c2r = coefficients_to_roots(r2);
  auto c4r = coefficients_to_roots(r4);
  auto p2 = polynomial(r2), p4 = polynomial(r4);
  LoopIntegrand f = [&](cplx z, cplx) { return eval_polynomial(p2, z) / eval_polynomial(p4, z); };
  auto value = [&](ContourKind k) {
    Contour c = build_contour(k, c2r, c4r, opt);
    cplx s{};
    for (const auto& l : c.loops) s += integrate_loop(l, f, opt).value;
    return s / (kPi * kI);
  };
  return {value(ContourKind::gamma_0), value(ContourKind::gamma_plus), value(ContourKind::gamma_minus)};
}

I1Family i1_family(const Multiplet& m4, const ContourOptions& opt) {
  auto f = o4_fields(m4);
  double big = max_abs(m4);
  if (std::abs(f.z2) <= 1e-14 * big) {
    I1Family r;
    r.I0 = o4_periods(m4, opt).Ia;
    r.I1 = r.I2 = cplx{std::nan(""), std::nan("")};
    r.chart_ok = false;
    return r;
  }
  auto c4 = coefficients_to_roots(m4);
  Contour a = build_contour(ContourKind::gamma_a, std::nullopt, c4, opt);
  std::vector<LoopIntegrand> fs;
  for (int m = 0; m <= 2; ++m) fs.push_back([m](cplx z, cplx sp) { return std::pow(z, m) / (2.0 * sp); });
  auto v = branch_loop_values(a, fs, false, opt);
  return {v[0], v[1], v[2], true};
}

cplx f_uh_quadrature(const Multiplet& m2, const Multiplet& m4, const ContourOptions& opt_in) {
  auto f = o4_fields(m4);
  if (std::abs(f.z2) <= 1e-14 * max_abs(m4)) throw Error(ErrorKind::chart, "z2 = 0: F is not available in this chart");
  ContourOptions opt = opt_in;
  opt.exclude_origin = true;
  auto c4 = coefficients_to_roots(m4);
  auto p2 = polynomial(m2);
  Contour a = build_contour(ContourKind::gamma_a, std::nullopt, c4, opt);
  LoopIntegrand g = [&](cplx z, cplx sp) {
    cplx e = eval_polynomial(p2, z);
    return e * e / (z * z * sp);
  };
  return branch_loop_values(a, {g}, false, opt)[0];
}

cplx dfdx2_quadrature(const Multiplet& m2, const Multiplet& m4, const ContourOptions& opt) {
  auto c4 = coefficients_to_roots(m4);
  SU2Element r = chart_rotation(all_roots_o4(c4));
  Multiplet r2 = wigner_rotate(r, m2), r4 = wigner_rotate(r, m4);
  auto c4r = coefficients_to_roots(r4);
  auto p2 = polynomial(r2), p4 = polynomial(r4);
  Contour a = build_contour(ContourKind::gamma_a, std::nullopt, c4r, opt);
  LoopIntegrand g = [&](cplx z, cplx sp) {
    cplx e = eval_polynomial(p2, z);
    return -0.5 * e * e / (eval_polynomial(p4, z) * sp);
  };
  return branch_loop_values(a, {g}, false, opt)[0];
}

cplx o2o2_f_quadrature(const Multiplet& m1, const Multiplet& m2, const ContourOptions& opt) {
  auto c = coefficients_to_roots(m2);
  auto lab = o2_labels(c);
  SpherePoint g = lab.gamma, A = antipode(lab.gamma);
  if (g.inf || A.inf || g.z == cplx{} || A.z == cplx{})
    throw Error(ErrorKind::chart, "z2 = 0: the O(2)+O(2) F is not available in this chart");
  auto p1 = polynomial(m1), p2 = polynomial(m2);
  LoopIntegrand f = [&](cplx z, cplx) {
    cplx e = eval_polynomial(p1, z);
    return e * e / (z * z * eval_polynomial(p2, z));
  };
  Loop lg = make_circle(g, {A.z, cplx{}}, opt, 1.0);
  Loop la = make_circle(A, {g.z, cplx{}}, opt, 1.0);
  cplx v = integrate_loop(lg, f, opt).value - integrate_loop(la, f, opt).value;
  return v / (2 * kPi * kI);
}

}  // namespace hkforge
