#pragma once
#include <functional>
#include <vector>

#include "hkforge/core.hpp"

namespace hkforge {

// Integrand receives x together with x-a and b-x computed without cancellation,
// so endpoint singularities can be handled exactly by the caller.
using EndpointIntegrand = std::function<double(double x, double from_a, double to_b)>;

struct QuadResult {
  double value;
  double error_estimate;
  int levels;
};

// Double-exponential (tanh-sinh) rule with level halving until the change drops below tol.
QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b, double tol = 1e-14, int max_levels = 12);

// Trapezoid sum of w[i] * f[i] over periodic samples; both variants must agree to rounding.
cplx periodic_sum_serial(const std::vector<cplx>& values);
cplx periodic_sum_parallel(const std::vector<cplx>& values);

}  // namespace hkforge
