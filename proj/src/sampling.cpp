#include "hkforge/sampling.hpp"

#include <cmath>

namespace hkforge {

Rng make_rng(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(h), std::uint32_t(h >> 32)};
  return Rng(seq);
}

double normal(Rng& rng) {
  // Box-Muller on the raw generator keeps streams identical across standard libraries
  constexpr double scale = 1.0 / 18446744073709551616.0;
  double u1 = (double(rng() >> 11) + 0.5) * (scale * 2048.0);
  double u2 = (double(rng() >> 11) + 0.5) * (scale * 2048.0);
  return std::sqrt(-2 * std::log(u1)) * std::cos(2 * kPi * u2);
}

cplx normal_complex(Rng& rng) {
  double re = normal(rng);
  return {re, normal(rng)};
}

Multiplet random_multiplet(Rng& rng, int two_j) {
  Multiplet m;
  m.two_j = two_j;
  m.coeffs.assign(two_j + 1, cplx{});
  if (two_j % 2) {
    for (auto& c : m.coeffs) c = normal_complex(rng);
    return m;
  }
  const int j = two_j / 2;
  m.coeffs[j] = normal(rng);
  for (int mm = 1; mm <= j; ++mm) {
    cplx c = normal_complex(rng);
    m.coeffs[j + mm] = c;
    m.coeffs[j - mm] = (mm % 2 ? -1.0 : 1.0) * std::conj(c);
  }
  return m;
}

Multiplet random_o2(Rng& rng) { return random_multiplet(rng, 2); }
Multiplet random_o4(Rng& rng) { return random_multiplet(rng, 4); }

SU2Element random_rotation(Rng& rng) {
  double q[4], n = 0;
  for (double& x : q) {
    x = normal(rng);
    n += x * x;
  }
  n = std::sqrt(n);
  SU2Element r;
  r.a = cplx{q[0], q[1]} / n;
  r.b = cplx{q[2], q[3]} / n;
  return r;
}

SpherePoint random_sphere_point(Rng& rng) {
  double x = normal(rng), y = normal(rng), z = normal(rng);
  double n = std::sqrt(x * x + y * y + z * z);
  x /= n;
  y /= n;
  z /= n;
  if (z <= -1 + 1e-15) return SpherePoint::infinity();
  return SpherePoint::at(cplx{x, y} / (1 + z));
}

}  // namespace hkforge
