#pragma once
#include <functional>
#include <optional>
#include <vector>

#include "hkforge/multiplet.hpp"

namespace hkforge {

enum class ContourKind { gamma, gamma_a, gamma_b, gamma_0, gamma_plus, gamma_minus };

const char* to_string(ContourKind k);
ContourKind contour_kind_from_string(const std::string& s);

// One closed analytic curve. Circles surround isolated poles; ellipses with foci on
// two branch points surround a square-root cut, zeta = c + h cosh(mu + i theta).
struct Loop {
  bool ellipse = false;
  cplx center;
  double radius = 0;  // circles
  cplx half_focal;    // ellipses: foci at center -+ half_focal
  double mu = 0;
  // sqrt(P) = h sinh(s) sqrt(lead (zeta - o1)(zeta - o2)) on ellipses
  std::vector<cplx> outer_roots;
  cplx lead{1.0, 0.0};
  double weight = 1.0;
  SpherePoint focus1, focus2;  // or the enclosed pole (focus1) for circles
};

struct ContourOptions {
  int nodes = 4096;
  int max_nodes = 1 << 20;
  double tol = 1e-12;         // relative change between N/2 and N nodes
  double clearance = 1e-9;    // minimal elliptic radius / relative pole separation
  bool exclude_origin = false;
  bool parallel = true;
  // loop size multiplier; 1 puts loops at 0.45 of the clearance, values below 2.2 stay clear
  double size = 1.0;
};

struct Contour {
  ContourKind kind = ContourKind::gamma;
  int samples = 0;
  std::vector<Loop> loops;
};

Contour build_contour(ContourKind kind, const std::optional<RootConstellation>& c2,
                      const std::optional<RootConstellation>& c4, const ContourOptions& opt = {});

cplx loop_point(const Loop& l, double theta);
// Winding number of a single loop around a point (argument accumulation).
int winding_number(const Loop& l, const SpherePoint& p, int samples = 2048);
// Zeros of a polynomial enclosed by a loop, by the argument principle.
int enclosed_zero_count(const Loop& l, const std::vector<cplx>& poly, int samples = 4096);

// Samples of a loop: node, d zeta / d theta and the tracked square root of the polynomial.
struct LoopSamples {
  std::vector<cplx> z, dz, sqrt_p;
};
LoopSamples sample_loop_serial(const Loop& l, int n);
LoopSamples sample_loop_parallel(const Loop& l, int n);

using LoopIntegrand = std::function<cplx(cplx z, cplx sqrt_p)>;
// Trapezoid value of the loop integral using every stride-th node.
cplx trapezoid_serial(const LoopSamples& s, const LoopIntegrand& f, int stride = 1);
cplx trapezoid_parallel(const LoopSamples& s, const LoopIntegrand& f, int stride = 1);

struct LoopIntegral {
  cplx value;
  int nodes;
  double change;  // |I_N - I_{N/2}|
};
// Node doubling until converged.
LoopIntegral integrate_loop(const Loop& l, const LoopIntegrand& f, const ContourOptions& opt = {});

double integrate_o2_invariant(const Multiplet& m2, const ContourOptions& opt = {});

struct Periods {
  cplx Ia, Ib;
};
Periods o4_periods(const Multiplet& m4, const ContourOptions& opt = {});

struct MixedIntegrals {
  cplx I0, Iplus, Iminus;
};
MixedIntegrals mixed_integrals(const Multiplet& m2, const Multiplet& m4, const ContourOptions& opt = {});

struct I1Family {
  cplx I0, I1, I2;
  bool chart_ok = true;  // false when z2 = 0: only I0 is available
};
I1Family i1_family(const Multiplet& m4, const ContourOptions& opt = {});

// Chart-dependent quadratures used by the potentials.
cplx f_uh_quadrature(const Multiplet& m2, const Multiplet& m4, const ContourOptions& opt = {});
cplx dfdx2_quadrature(const Multiplet& m2, const Multiplet& m4, const ContourOptions& opt = {});
cplx o2o2_f_quadrature(const Multiplet& m1, const Multiplet& m2, const ContourOptions& opt = {});

// Fixed rotation that moves every listed point to a bounded region of the chart.
SU2Element chart_rotation(const std::vector<SpherePoint>& points, double max_modulus = 20.0);

}  // namespace hkforge
