#include "hkforge/core.hpp"

#include <algorithm>
#include <cmath>

namespace hkforge {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::structural: return "structural";
    case ErrorKind::domain: return "domain";
    case ErrorKind::reality: return "reality";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::pinched: return "pinched-torus";
    case ErrorKind::near_degenerate: return "near-degenerate";
    case ErrorKind::chart: return "chart";
    case ErrorKind::no_solution: return "no-solution";
    case ErrorKind::pole_on_cycle: return "pole-on-cycle";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::structural:
    case ErrorKind::domain:
    case ErrorKind::usage:
      return 2;
    default:
      return 3;
  }
}

double Vector3::norm() const { return std::sqrt(norm2()); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double rel_err(double got, double want, double floor) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

double rel_err(cplx got, cplx want, double floor) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

}  // namespace hkforge
