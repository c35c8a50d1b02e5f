#include "helpers.hpp"
#include "hkforge/coherent.hpp"
#include "hkforge/sampling.hpp"

using namespace hkforge;

TEST_SUITE("coherent") {
  TEST_CASE("overlap examples") {
    auto z = SpherePoint::at(0), one = SpherePoint::at(1);
    CHECK_REL(coherent_overlap(z, one, 1).modulus, 1 / std::sqrt(2.0), 1e-15);
    CHECK_REL(fubini_study_distance(z, one), kPi / 2, 1e-14);
    CHECK_REL(fubini_study_distance(one, antipode(one)), kPi, 1e-14);
    CHECK(fubini_study_distance(one, one) < 1e-7);
    CHECK(coherent_overlap(z, SpherePoint::infinity(), 2).modulus < 1e-15);
    CHECK_REL(coherent_overlap(SpherePoint::infinity(), SpherePoint::infinity(), 3).modulus, 1.0, 1e-15);
  }

  TEST_CASE("octant phase and area") {
    std::vector<SpherePoint> p{SpherePoint::at(0), SpherePoint::at(1), SpherePoint::at(kI)};
    CHECK_REL(cyclic_phase(p).phase, kPi / 4, 1e-13);
    CHECK_REL(spherical_polygon_area(p), kPi / 2, 1e-13);
    std::rotate(p.begin(), p.begin() + 1, p.end());
    CHECK_REL(cyclic_phase(p).phase, kPi / 4, 1e-13);
  }

  TEST_CASE("great circle polygon has phase 0 mod pi") {
    double ph = cyclic_phase({SpherePoint::at(0), SpherePoint::at(0.5), SpherePoint::at(2)}).phase;
    CHECK(std::min(std::abs(ph), kPi - std::abs(ph)) < 1e-13);
  }

  TEST_CASE("antipodal neighbours are a degenerate polygon") {
    auto a = SpherePoint::at(cplx(0.3, 0.2));
    CHECK_THROWS_AS(cyclic_phase({a, antipode(a), SpherePoint::at(1)}), Error);
  }

  TEST_CASE("k and k' complement on random pairs") {
    auto rng = make_rng(11, "kk");
    for (int t = 0; t < 200; ++t) {
      auto a = random_sphere_point(rng), b = random_sphere_point(rng);
      double k = overlap_k(a, b), kp = overlap_kprime(a, b);
      CHECK(std::abs(k * k + kp * kp - 1) < 1e-14);
      CHECK_REL(kp, chordal(a, b), 1e-13);
    }
  }

  TEST_CASE("principal directions") {
    cplx g(0.3, 0.4);
    auto dirs = penrose_factorize(roots_to_coefficients({2, 1.0, {SpherePoint::at(g)}}));
    REQUIRE(dirs.size() == 2);
    bool has_g = false, has_anti = false;
    for (auto& d : dirs) {
      if (!d.point.inf && std::abs(d.point.z - g) < 1e-12) has_g = true;
      if (!d.point.inf && std::abs(d.point.z - antipode(SpherePoint::at(g)).z) < 1e-12) has_anti = true;
    }
    CHECK(has_g);
    CHECK(has_anti);
    // all four roots at one point: the spin-2 coherent state
    Multiplet coh{4, {1.0, 0.0, 0.0, 0.0, 0.0}};
    auto cd = penrose_factorize(coh);
    REQUIRE(cd.size() == 1);
    CHECK(cd[0].multiplicity == 4);
    CHECK_THROWS_AS(penrose_factorize(Multiplet{2, {0.0, 0.0, 0.0}}), Error);
  }
}
