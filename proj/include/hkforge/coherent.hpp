#pragma once
#include <utility>
#include <vector>

#include "hkforge/multiplet.hpp"

namespace hkforge {

struct Overlap {
  cplx value;
  double modulus;
  double phase;
};

// <alpha|beta> for spin j: the spin-1/2 overlap raised to the 2j-th power.
Overlap coherent_overlap(const SpherePoint& alpha, const SpherePoint& beta, int two_j);
// k = |<alpha|beta>|_{1/2}, k' = chordal distance; k^2 + k'^2 = 1.
double overlap_k(const SpherePoint& alpha, const SpherePoint& beta);
double overlap_kprime(const SpherePoint& alpha, const SpherePoint& beta);

struct FubiniStudy {
  double from_k;       // 2 arccos k
  double from_kprime;  // 2 arcsin k'
};
FubiniStudy fubini_study_both(const SpherePoint& alpha, const SpherePoint& beta);
double fubini_study_distance(const SpherePoint& alpha, const SpherePoint& beta);

struct CyclicPhase {
  double modulus_product;
  double phase;  // in (-pi, pi]
};
CyclicPhase cyclic_phase(const std::vector<SpherePoint>& points);

// Signed spherical polygon area (geodesic edges) used as a cross-check of the phase law.
double spherical_polygon_area(const std::vector<SpherePoint>& points);

struct PrincipalDirection {
  SpherePoint point;
  int multiplicity;
};
std::vector<PrincipalDirection> penrose_factorize(const Multiplet& m, double cluster_tol = 1e-6);
// Rebuild the section (up to overall scale) from principal directions.
Multiplet penrose_reconstruct(const std::vector<PrincipalDirection>& dirs, int two_j);

}  // namespace hkforge
