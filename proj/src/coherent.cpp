#include "hkforge/coherent.hpp"

#include <algorithm>
#include <cmath>

namespace hkforge {

namespace {

struct Spinor {
  cplx u, v;
};

// normalized homogeneous coordinates (1, z)/sqrt(1+|z|^2), infinity -> (0, 1)
Spinor spinor(const SpherePoint& p) {
  if (p.inf) return {cplx{}, cplx{1.0, 0.0}};
  double n = std::sqrt(1.0 + std::norm(p.z));
  return {cplx{1.0 / n, 0.0}, p.z / n};
}

cplx half_overlap(const SpherePoint& a, const SpherePoint& b) {
  Spinor s = spinor(a), t = spinor(b);
  return std::conj(s.u) * t.u + std::conj(s.v) * t.v;
}

}  // namespace

Overlap coherent_overlap(const SpherePoint& alpha, const SpherePoint& beta, int two_j) {
  cplx h = half_overlap(alpha, beta);
  cplx v = std::pow(h, two_j);
  if (two_j == 0) v = 1.0;
  return {v, std::abs(v), std::arg(v)};
}

double overlap_k(const SpherePoint& alpha, const SpherePoint& beta) {
  return std::abs(half_overlap(alpha, beta));
}

double overlap_kprime(const SpherePoint& alpha, const SpherePoint& beta) { return chordal(alpha, beta); }

FubiniStudy fubini_study_both(const SpherePoint& alpha, const SpherePoint& beta) {
  double k = std::min(1.0, overlap_k(alpha, beta));
  double kp = std::min(1.0, overlap_kprime(alpha, beta));
  return {2 * std::acos(k), 2 * std::asin(kp)};
}

double fubini_study_distance(const SpherePoint& alpha, const SpherePoint& beta) {
  // atan2 form is accurate at both ends of [0, pi]
  double k = overlap_k(alpha, beta);
  double kp = overlap_kprime(alpha, beta);
  return 2 * std::atan2(kp, k);
}

CyclicPhase cyclic_phase(const std::vector<SpherePoint>& points) {
  if (points.size() < 3) throw Error(ErrorKind::domain, "cyclic phase needs at least three points");
  cplx prod{1.0, 0.0};
  double mod = 1.0;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& a = points[i];
    const auto& b = points[(i + 1) % points.size()];
    cplx h = half_overlap(a, b);
    if (std::abs(h) < 1e-12)
      throw Error(ErrorKind::degenerate, "degenerate polygon: consecutive antipodal points");
    prod *= h / std::abs(h);
    mod *= std::abs(h);
  }
  return {mod, std::arg(prod)};
}

double spherical_polygon_area(const std::vector<SpherePoint>& points) {
  // fan triangulation from the first vertex, signed Van Oosterom-Strackee triangles
  double area = 0;
  Vector3 a = unit_vector(points[0]);
  for (size_t i = 1; i + 1 < points.size(); ++i) {
    Vector3 b = unit_vector(points[i]), c = unit_vector(points[i + 1]);
    double num = dot(a, cross(b, c));
    double den = 1 + dot(a, b) + dot(b, c) + dot(c, a);
    area += 2 * std::atan2(num, den);
  }
  return area;
}

std::vector<PrincipalDirection> penrose_factorize(const Multiplet& m, double cluster_tol) {
  if (max_abs(m) == 0.0) throw Error(ErrorKind::domain, "zero multiplet has no principal spinors");
  auto roots = polynomial_roots(m);
  std::vector<PrincipalDirection> out;
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    // gather the cluster and average finite members
    int mult = 0;
    cplx sum{};
    bool inf = roots[i].inf;
    for (size_t k = i; k < roots.size(); ++k) {
      if (used[k] || chordal(roots[i], roots[k]) > cluster_tol) continue;
      used[k] = true;
      ++mult;
      if (!roots[k].inf) sum += roots[k].z;
    }
    SpherePoint p = inf ? SpherePoint::infinity() : SpherePoint::at(sum / double(mult));
    out.push_back({p, mult});
  }
  return out;
}

Multiplet penrose_reconstruct(const std::vector<PrincipalDirection>& dirs, int two_j) {
  std::vector<cplx> p{cplx{1.0, 0.0}};
  int deg = 0;
  for (const auto& d : dirs) {
    for (int i = 0; i < d.multiplicity; ++i) {
      std::vector<cplx> f = d.point.inf ? std::vector<cplx>{cplx{1.0, 0.0}} : std::vector<cplx>{-d.point.z, 1.0};
      std::vector<cplx> r(p.size() + f.size() - 1, cplx{});
      for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = 0; b < f.size(); ++b) r[a + b] += p[a] * f[b];
      p = r;
      ++deg;
    }
  }
  if (deg != two_j) throw Error(ErrorKind::structural, "principal direction count differs from 2j");
  p.resize(two_j + 1, cplx{});
  return from_polynomial(two_j, p);
}

}  // namespace hkforge
