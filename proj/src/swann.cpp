#include "hkforge/swann.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

namespace hkforge {

// ---- O(2) + O(2) ----

double o2o2_F(cplx z1, double x1, cplx z2, double x2) {
  const double w2 = std::norm(z2);
  const double r1sq = 4 * std::norm(z1) + x1 * x1;
  const double r2sq = 4 * w2 + x2 * x2;
  const double r2 = std::sqrt(r2sq);
  if (w2 == 0 || r2 == 0) throw Error(ErrorKind::chart, "z2 = 0: F is not available in this chart");
  const double d = 4 * (z1 * std::conj(z2)).real() + x1 * x2;
  const cplx c = z1 * std::conj(z2) - z2 * std::conj(z1);
  const double W = (c * c).real();
  return (r1sq * r2sq - d * d) / (2 * r2 * w2) + r2 * W / (w2 * w2);
}

O2O2XDerivatives o2o2_x_derivatives(cplx z1, double x1, cplx z2, double x2) {
  const double w2 = std::norm(z2);
  const double r1sq = 4 * std::norm(z1) + x1 * x1;
  const double r2sq = 4 * w2 + x2 * x2;
  const double r2 = std::sqrt(r2sq);
  if (w2 == 0 || r2 == 0) throw Error(ErrorKind::chart, "z2 = 0: F is not available in this chart");
  const double d = 4 * (z1 * std::conj(z2)).real() + x1 * x2;
  const cplx c = z1 * std::conj(z2) - z2 * std::conj(z1);
  const double W = (c * c).real();
  const double N = r1sq * r2sq - d * d;
  O2O2XDerivatives r;
  r.dF_dx1 = (2 * x1 * r2sq - 2 * d * x2) / (2 * r2 * w2);
  r.dF_dx2 = (2 * x2 * r1sq - 2 * d * x1) / (2 * r2 * w2) - N * x2 / (2 * r2 * r2sq * w2) + x2 * W / (r2 * w2 * w2);
  return r;
}

double o2o2_potential(const Vector3& r1, const Vector3& r2) {
  const double n2 = r2.norm();
  if (!(n2 > 0)) throw Error(ErrorKind::degenerate, "r2 = 0: the O(2)+O(2) potential is singular");
  return -2 * cross(r1, r2).norm2() / (n2 * n2 * n2);
}

double o2o2_legendre(cplx z1, double x1, cplx z2, double x2) {
  auto d = o2o2_x_derivatives(z1, x1, z2, x2);
  return o2o2_F(z1, x1, z2, x2) - x1 * d.dF_dx1 - x2 * d.dF_dx2;
}

O2O2State o2o2_state(const Multiplet& m1, const Multiplet& m2) {
  O2O2State s;
  auto f1 = o2_fields(m1), f2 = o2_fields(m2);
  s.z1 = f1.z1;
  s.x1 = f1.x1;
  s.z2 = f2.z1;
  s.x2 = f2.x1;
  s.r1 = o2_to_vector(m1);
  s.r2 = o2_to_vector(m2);
  s.K = o2o2_potential(s.r1, s.r2);
  s.F = o2o2_F(s.z1, s.x1, s.z2, s.x2);
  auto d = o2o2_x_derivatives(s.z1, s.x1, s.z2, s.x2);
  s.u1 = 0.5 * d.dF_dx1;
  s.u2 = 0.5 * d.dF_dx2;
  return s;
}

HiggsField o2o2_higgs(const Vector3& r1, const Vector3& r2) {
  const double n = r2.norm();
  if (!(n > 0)) throw Error(ErrorKind::degenerate, "r2 = 0: Higgs field is singular");
  const double d = dot(r1, r2);
  const double r1sq = r1.norm2();
  const double n2 = n * n, n3 = n2 * n, n5 = n3 * n2, n7 = n5 * n2;
  HiggsField h{};
  h.phi[0][0] = -2 / n;
  h.phi[0][1] = h.phi[1][0] = 2 * d / n3;
  h.phi[1][1] = (r1sq * n2 - 3 * d * d) / n5;
  // index order: grad[i][k][j] = d phi_kj / d r_i
  const Vector3 zero{};
  h.grad[0][0][0] = zero;
  h.grad[1][0][0] = (2 / n3) * r2;
  h.grad[0][0][1] = h.grad[0][1][0] = (2 / n3) * r2;
  h.grad[1][0][1] = h.grad[1][1][0] = (2 / n3) * r1 - (6 * d / n5) * r2;
  h.grad[0][1][1] = (2 / n3) * r1 - (6 * d / n5) * r2;
  h.grad[1][1][1] = (-3 * r1sq / n5) * r2 - (6 * d / n5) * r1 + (15 * d * d / n7) * r2;
  return h;
}

// ---- O(2) + O(4) ----

namespace {

struct Pieces {
  InvariantSet inv;
  WeierstrassData w;
  EllipticDual dual;
  O2Fields f2;
  O4Fields f4;
  O2O4Aux aux;
};

InvariantSet light_invariants(const Multiplet& m2, const Multiplet& m4) {
  InvariantSet s;
  s.g_sigma2 = g_sigma2(m2);
  auto b = o4_basic_invariants(m4);
  s.g_rho2 = b.g_rho2;
  s.g_rho3 = b.g_rho3;
  auto mx = mixed_invariants(m2, m4);
  s.g_rho_sigma2 = mx.g_rho_sigma2;
  s.g_rho2_sigma2 = mx.g_rho2_sigma2;
  return s;
}

Pieces pieces(const Multiplet& m2, const Multiplet& m4) {
  Pieces p;
  p.f2 = o2_fields(m2);
  p.f4 = o4_fields(m4);
  if (std::abs(p.f4.z2) <= 1e-14 * max_abs(m4))
    throw Error(ErrorKind::chart, "z2 = 0: the O(2)+O(4) F is not available in this chart");
  p.inv = light_invariants(m2, m4);
  p.w = from_multiplet(m4);
  p.dual = dual_periods(p.w);
  p.aux = o2o4_aux(m2, m4, p.w, p.inv);
  return p;
}

double F_from(const Pieces& p) {
  const auto& a = p.aux;
  const cplx z1 = p.f2.z1;
  const double x1 = p.f2.x1;
  const cplx c = (z1 / a.sqrt_z2) * (p.f4.v2 * z1 / p.f4.z2 - 4 * x1);
  const double zp2 = a.z1_plus * a.z1_plus, zm2 = a.z1_minus * a.z1_minus;
  cplx F = 4 * (zp2 - zm2) * p.w.eta + 4 * (x1 * x1 + a.x_minus * zp2 - a.x_plus * zm2) * p.w.omega +
           2 * c.real() * a.pi_minus + 2.0 * kI * c.imag() * a.pi_plus;
  return F.real();
}

O2O4Gradients grads_from(const Pieces& p) {
  const auto& a = p.aux;
  O2O4Gradients g;
  g.dF_dx1 = (8.0 * (p.f2.x1 * p.w.omega - a.z1_minus * a.pi_minus - kI * a.z1_plus * a.pi_plus)).real();
  const cplx M{a.M_minus, a.M_plus}, N{a.N_minus, a.N_plus};
  const cplx zz{a.z1_minus, a.z1_plus};
  g.dF_dv2 = (2.0 * M * p.dual.eta_star + 2.0 * N * p.dual.omega_star + zz * zz * (a.pi_minus + a.pi_plus)) / a.sqrt_z2;
  g.dF_dx2 = constraint_value(p.inv, p.dual);
  return g;
}

}  // namespace

O2O4Aux o2o4_aux(const Multiplet& m2, const Multiplet& m4, const WeierstrassData& w, const InvariantSet& inv) {
  auto f2 = o2_fields(m2);
  auto f4 = o4_fields(m4);
  O2O4Aux a;
  const double az = std::abs(f4.z2);
  if (az == 0) throw Error(ErrorKind::chart, "z2 = 0: auxiliary coordinates undefined");
  a.sqrt_z2 = std::sqrt(f4.z2);
  a.x_plus = (f4.x2 + 6 * az) / 3;
  a.x_minus = (f4.x2 - 6 * az) / 3;
  const cplx vv = f4.v2 / a.sqrt_z2;
  a.v_plus = vv.imag();
  a.v_minus = vv.real();
  const cplx zz = f2.z1 / a.sqrt_z2;
  a.z1_plus = zz.imag();
  a.z1_minus = zz.real();
  a.pi_plus = pi_function(w, a.x_plus, cplx{0.0, 2 * az * a.v_plus});
  a.pi_minus = pi_function(w, a.x_minus, cplx{-2 * az * a.v_minus, 0.0});

  const double gs = inv.g_sigma2, g2 = inv.g_rho2, g3 = inv.g_rho3;
  const double ga = inv.g_rho_sigma2, gb = inv.g_rho2_sigma2;
  const double dx = a.x_plus - a.x_minus;
  const double vscale = std::sqrt(g2 / az);
  a.mn_regular = std::abs(a.v_plus) > 1e-6 * vscale && std::abs(a.v_minus) > 1e-6 * vscale;
  auto mn = [&](double x, double v, double zpm, double& M, double& N) {
    const double s = gs - 3 * dx * zpm * zpm;
    const double den = 3 * dx * v;
    M = ((2 * g2 * x + 3 * g3) * s - 3 * x * x * ga - x * gb) / den;
    N = (-(9 * g3 * x + 2 * g2 * g2) * s + (3 * g2 * x + 9 * g3) * ga + (3 * x * x - 2 * g2) * gb) / den;
  };
  if (a.mn_regular) {
    mn(a.x_plus, a.v_plus, a.z1_plus, a.M_plus, a.N_plus);
    mn(a.x_minus, a.v_minus, a.z1_minus, a.M_minus, a.N_minus);
  }
  return a;
}

double constraint_value(const InvariantSet& inv, const EllipticDual& d) {
  return -2 * (inv.g_rho_sigma2 * d.eta_star - inv.g_rho2_sigma2 * d.omega_star);
}

double constraint_scale(const InvariantSet& inv, const EllipticDual& d) {
  return 2 * (std::abs(inv.g_rho_sigma2 * d.eta_star) + std::abs(inv.g_rho2_sigma2 * d.omega_star));
}

double o2o4_F(const Multiplet& m2, const Multiplet& m4) { return F_from(pieces(m2, m4)); }

O2O4Gradients o2o4_gradients_fd(const Multiplet& m2, const Multiplet& m4, double h) {
  auto f2 = o2_fields(m2);
  auto f4 = o4_fields(m4);
  const double s = std::max(1.0, max_abs(m4));
  const double hs = h * s;
  auto F4 = [&](cplx v2, double x2) { return o2o4_F(m2, make_o4(f4.z2, v2, x2)); };
  O2O4Gradients g;
  g.dF_dx1 = (o2o4_F(make_o2(f2.z1, f2.x1 + hs), m4) - o2o4_F(make_o2(f2.z1, f2.x1 - hs), m4)) / (2 * hs);
  g.dF_dx2 = (F4(f4.v2, f4.x2 + hs) - F4(f4.v2, f4.x2 - hs)) / (2 * hs);
  const double fr = (F4(f4.v2 + hs, f4.x2) - F4(f4.v2 - hs, f4.x2)) / (2 * hs);
  const double fi = (F4(f4.v2 + kI * hs, f4.x2) - F4(f4.v2 - kI * hs, f4.x2)) / (2 * hs);
  g.dF_dv2 = 0.5 * cplx{fr, -fi};
  g.fallback = true;
  return g;
}

O2O4Gradients o2o4_gradients(const Multiplet& m2, const Multiplet& m4) {
  auto p = pieces(m2, m4);
  if (p.aux.mn_regular) return grads_from(p);
  auto g = grads_from(p);
  g.dF_dv2 = o2o4_gradients_fd(m2, m4).dF_dv2;
  g.fallback = true;
  return g;
}

double o2o4_potential_compact(const InvariantSet& inv, const EllipticDual& d) {
  return -4.0 / 3.0 * (inv.g_rho2_sigma2 + 4 * inv.g_rho2 * inv.g_sigma2) * d.eta_star +
         4 * (inv.g_rho2 * inv.g_rho_sigma2 + 6 * inv.g_rho3 * inv.g_sigma2) * d.omega_star;
}

double o2o4_potential_mixed(const InvariantSet& inv, const EllipticDual& d, double x_sum) {
  return o2o4_potential_compact(inv, d) -
         4 * x_sum * (inv.g_rho_sigma2 * d.eta_star - inv.g_rho2_sigma2 * d.omega_star);
}

O2O4State o2o4_state(const Multiplet& m2, const Multiplet& m4) {
  auto p = pieces(m2, m4);
  O2O4State s;
  s.m2 = m2;
  s.m4 = m4;
  s.inv = invariant_set(m2, m4);
  s.w = p.w;
  s.dual = p.dual;
  s.aux = p.aux;
  s.F = F_from(p);
  s.grad = p.aux.mn_regular ? grads_from(p) : o2o4_gradients(m2, m4);
  s.u1 = 0.5 * s.grad.dF_dx1;
  s.u2 = s.grad.dF_dv2;
  s.K = s.F - 2 * (s.u2 * p.f4.v2).real() - p.f2.x1 * s.grad.dF_dx1;
  s.residual = std::abs(s.grad.dF_dx2) / std::max(constraint_scale(s.inv, s.dual), 1e-300);
  return s;
}

double o2o4_legendre(const Multiplet& m2, const Multiplet& m4) { return o2o4_state(m2, m4).K; }

double o2o4_potential(const O2O4State& s) {
  if (!s.solved) throw Error(ErrorKind::domain, "the compact potential needs a solved constraint");
  return o2o4_potential_compact(s.inv, s.dual);
}

DarbouxCoords to_darboux(cplx u2, cplx z2) {
  const cplx r = std::sqrt(z2);
  return {u2 * r, 2.0 * r};
}

void from_darboux(const DarbouxCoords& d, cplx& u2, cplx& z2) {
  const cplx r = 0.5 * d.Z2;
  z2 = r * r;
  u2 = d.U2 / r;
}

// ---- constraint solver ----

namespace {

struct ConstraintEval {
  double h, dh, scale;
  double kmin2;  // min(k^2, k'^2): distance to the nearest pinched torus
};

ConstraintEval eval_constraint(const Multiplet& m2, cplx z2, cplx v2, double x2) {
  const Multiplet m4 = make_o4(z2, v2, x2);
  const InvariantSet inv = light_invariants(m2, m4);
  const WeierstrassData w = from_invariants(inv.g_rho2, inv.g_rho3);
  const Differentials df = differentials(w);
  const double es = df.dual.eta_star, os = df.dual.omega_star;
  const double g2 = inv.g_rho2, g3 = inv.g_rho3;
  const double delta = 4 * g2 * g2 * g2 - 27 * g3 * g3;

  // derivatives with respect to x2 at fixed z2, v2
  const Multiplet ex = make_o4(0.0, 0.0, 1.0);
  const double da = mixed_invariants(m2, ex).g_rho_sigma2;  // linear in the O(4) multiplet
  const double t = std::max(1.0, std::sqrt(g2));
  const double db = (mixed_invariants(m2, make_o4(z2, v2, x2 + t)).g_rho2_sigma2 -
                     mixed_invariants(m2, make_o4(z2, v2, x2 - t)).g_rho2_sigma2) /
                    (2 * t);  // exact: quadratic in the O(4) multiplet
  const double dg2 = 2 * x2 / 3;
  const double dg3 = 8 * std::norm(z2) / 3 - std::norm(v2) / 3 - 2 * x2 * x2 / 9;
  const double dom = df.domega_dg2 * dg2 + df.domega_dg3 * dg3;
  const double det = df.deta_dg2 * dg2 + df.deta_dg3 * dg3;
  const double ddelta = 12 * g2 * g2 * dg2 - 54 * g3 * dg3;
  const double des =
      (4 * g2 * dg2 * w.omega + 2 * g2 * g2 * dom - 9 * dg3 * w.eta - 9 * g3 * det) / delta - es * ddelta / delta;
  const double dos = (3 * dg3 * w.omega + 3 * g3 * dom - 2 * dg2 * w.eta - 2 * g2 * det) / delta - os * ddelta / delta;

  ConstraintEval r;
  r.h = -2 * (inv.g_rho_sigma2 * es - inv.g_rho2_sigma2 * os);
  r.dh = -2 * (da * es + inv.g_rho_sigma2 * des - db * os - inv.g_rho2_sigma2 * dos);
  r.scale = 2 * (std::abs(inv.g_rho_sigma2 * es) + std::abs(inv.g_rho2_sigma2 * os));
  r.kmin2 = std::min(w.k * w.k, w.kprime * w.kprime);
  return r;
}

}  // namespace

O2O4State solve_constraint(const Multiplet& m2, cplx z2, cplx v2, double x2_guess, const SolverOptions& opt) {
  ConstraintEval e0;
  try {
    e0 = eval_constraint(m2, z2, v2, x2_guess);
  } catch (const Error& err) {
    throw Error(ErrorKind::degenerate, std::string("constraint solver start point: ") + err.what());
  }
  const double scale0 = std::sqrt(4 * std::norm(z2) + std::norm(v2) + x2_guess * x2_guess / 3);
  double root = x2_guess;
  if (std::abs(e0.h) > opt.tol * e0.scale) {
    // expand a bracket around the guess by sign change
    double lo = x2_guess, hi = x2_guess, hlo = e0.h, hhi = e0.h;
    bool left_ok = true, right_ok = true, found = false;
    // steps shrink near a pinched torus so the bracket does not jump across it
    double step = opt.step * std::max(scale0, 1e-300) * std::min(1.0, 4 * e0.kmin2);
    std::ostringstream scan;
    scan << "no sign change of dF/dx2 found; scan (x2, h/scale):";
    int logged = 0;
    for (int i = 0; i < opt.max_expand && !found && (left_ok || right_ok); ++i, step *= 1.6) {
      for (int side = 0; side < 2 && !found; ++side) {
        bool& ok = side ? right_ok : left_ok;
        if (!ok) continue;
        const double x = x2_guess + (side ? step : -step);
        try {
          auto e = eval_constraint(m2, z2, v2, x);
          if (logged < 12) {
            scan << " (" << x << ", " << e.h / e.scale << ")";
            ++logged;
          }
          const double prev = side ? hhi : hlo;
          if ((e.h < 0) != (prev < 0)) {
            found = true;
            if (side) {
              lo = side ? hi : lo;
              hi = x;
              hlo = hhi;
              hhi = e.h;
            } else {
              hi = lo;
              lo = x;
              hhi = hlo;
              hlo = e.h;
            }
          } else if (side) {
            hi = x;
            hhi = e.h;
          } else {
            lo = x;
            hlo = e.h;
          }
        } catch (const Error&) {
          ok = false;  // degenerate torus on this side
        }
      }
    }
    if (!found) {
      if (!left_ok && !right_ok) throw Error(ErrorKind::degenerate, "discriminant vanishes along the search path");
      throw Error(ErrorKind::no_solution, scan.str());
    }
    const double start = std::abs(hlo) < std::abs(hhi) ? lo : hi;
    std::uintmax_t iters = opt.max_iter;
    auto f = [&](double x) {
      auto e = eval_constraint(m2, z2, v2, x);
      return std::make_pair(e.h, e.dh);
    };
    root = boost::math::tools::newton_raphson_iterate(f, start, lo, hi, std::numeric_limits<double>::digits - 2,
                                                      iters);
  }
  auto e = eval_constraint(m2, z2, v2, root);
  if (std::abs(e.h) > opt.tol * e.scale) {
    std::ostringstream msg;
    msg << "constraint residual " << std::abs(e.h) / e.scale << " above tolerance " << opt.tol;
    throw Error(ErrorKind::convergence, msg.str());
  }
  O2O4State s = o2o4_state(m2, make_o4(z2, v2, root));
  s.solved = true;
  return s;
}

}  // namespace hkforge
