#pragma once
#include <cstdint>
#include <random>
#include <string_view>

#include "hkforge/multiplet.hpp"

namespace hkforge {

using Rng = std::mt19937_64;

// Independent stream per (seed, label) so results do not depend on evaluation order.
Rng make_rng(std::uint64_t seed, std::string_view label);

double normal(Rng& rng);
cplx normal_complex(Rng& rng);
// Real multiplet with Gaussian independent components (any coefficients for half-integer j).
Multiplet random_multiplet(Rng& rng, int two_j);
Multiplet random_o2(Rng& rng);
Multiplet random_o4(Rng& rng);
// Haar-distributed rotation from a uniform unit quaternion.
SU2Element random_rotation(Rng& rng);
SpherePoint random_sphere_point(Rng& rng);

}  // namespace hkforge
