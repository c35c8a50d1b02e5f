#include "helpers.hpp"
#include "hkforge/coherent.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/multiplet.hpp"
#include "hkforge/sampling.hpp"

using namespace hkforge;

TEST_SUITE("multiplet") {
  TEST_CASE("reality examples") {
    CHECK(validate_reality(make_o2(1.0, 2.0)));
    CHECK_FALSE(validate_reality(Multiplet{2, {cplx(-1, 0), cplx(2, 1), cplx(-1, 0)}}));
    CHECK(validate_reality(make_o4(kI, 0.0, 1.0)));
    CHECK_THROWS_AS(validate_reality(Multiplet{2, {1.0, 2.0}}), Error);
  }

  TEST_CASE("field layout follows the Laurent expansion") {
    // eta = zbar1/zeta + x1 - z1 zeta, so P(zeta) = zbar1 + x1 zeta - z1 zeta^2
    cplx z1(0.3, -0.7);
    auto p = polynomial(make_o2(z1, 1.5));
    CHECK_REL(p[0], std::conj(z1), 1e-15);
    CHECK_REL(p[1], cplx(1.5), 1e-15);
    CHECK_REL(p[2], -z1, 1e-15);
    auto f = o4_fields(make_o4(cplx(1, 2), cplx(-0.5, 0.25), 0.75));
    CHECK_REL(f.z2, cplx(1, 2), 1e-15);
    CHECK_REL(f.v2, cplx(-0.5, 0.25), 1e-15);
    CHECK_REL(f.x2, 0.75, 1e-15);
  }

  TEST_CASE("root form examples") {
    auto a = o2_fields(roots_to_coefficients({2, 2.0, {SpherePoint::at(0)}}));
    CHECK(std::abs(a.z1) < 1e-15);
    CHECK_REL(a.x1, 2.0, 1e-15);
    auto b = o2_fields(roots_to_coefficients({2, 1.0, {SpherePoint::at(1)}}));
    CHECK_REL(b.z1, cplx(-0.5), 1e-15);
    CHECK(std::abs(b.x1) < 1e-15);
    auto c = o4_fields(roots_to_coefficients({4, 1.0, {SpherePoint::at(0), SpherePoint::at(0)}}));
    CHECK_REL(c.x2, 1.0, 1e-15);
    CHECK(std::abs(c.z2) + std::abs(c.v2) < 1e-15);
  }

  TEST_CASE("coefficients to roots examples") {
    auto c = coefficients_to_roots(make_o2(-0.5, 0.0));
    REQUIRE(c.roots.size() == 1);
    // gamma = 1 or its antipode -1, with the scale sign forced by reconstruction
    CHECK(std::abs(std::abs(c.roots[0].z) - 1) < 1e-12);
    CHECK_REL(std::abs(c.scale), 1.0, 1e-12);
    CHECK(max_abs_diff(roots_to_coefficients(c), make_o2(-0.5, 0.0)) < 1e-14);
    auto d = coefficients_to_roots(make_o4(0.0, 0.0, 1.0));
    CHECK_REL(d.scale, 1.0, 1e-14);
    for (auto& r : d.roots) CHECK((!r.inf && std::abs(r.z) < 1e-14));
  }

  TEST_CASE("root at infinity is a flag") {
    auto m = roots_to_coefficients({2, 1.0, {SpherePoint::infinity()}});
    CHECK(validate_reality(m));
    auto back = coefficients_to_roots(m);
    CHECK(max_abs_diff(roots_to_coefficients(back), m) < 1e-14);
  }

  TEST_CASE("half-integer spin") {
    Multiplet m{1, {cplx(0.3, 0.1), cplx(-0.2, 0.5)}};
    CHECK_THROWS_AS(coefficients_to_roots(m), Error);
    auto R = SU2Element::from_euler(0.2, 0.4, 0.6);
    auto r = wigner_rotate(R, m);
    double n0 = std::norm(m.coeffs[0]) + std::norm(m.coeffs[1]);
    double n1 = std::norm(r.coeffs[0]) + std::norm(r.coeffs[1]);
    CHECK_REL(n1, n0, 1e-14);
  }

  TEST_CASE("mobius examples") {
    SU2Element id;
    auto c = coefficients_to_roots(make_o4(cplx(0.3, 0.2), cplx(-1, 0.5), 0.4));
    auto same = mobius_apply(id, c);
    for (size_t i = 0; i < c.roots.size(); ++i) CHECK(std::abs(same.roots[i].z - c.roots[i].z) < 1e-15);
    SU2Element flip{0.0, 1.0};
    CHECK_REL(mobius_apply(flip, SpherePoint::at(1)).z, cplx(-1), 1e-15);
    CHECK(mobius_apply(flip, SpherePoint::at(0)).inf);
    auto m = make_o2(0.4, 1.0);
    CHECK(max_abs_diff(wigner_rotate(id, m), m) < 1e-15);
  }

  TEST_CASE("rotation by roots agrees with the representation matrix") {
    auto rng = make_rng(3, "mobius-wigner");
    for (int t = 0; t < 20; ++t) {
      auto R = random_rotation(rng);
      auto m = random_o4(rng);
      auto a = wigner_rotate(R, m);
      auto b = roots_to_coefficients(mobius_apply(R, coefficients_to_roots(m)));
      CHECK(max_abs_diff(a, b) <= 1e-12 * max_abs(m));
    }
  }

  TEST_CASE("o2 vector examples") {
    auto v = o2_to_vector(make_o2(0.0, 2.0));
    CHECK_REL(v.z, 2.0, 1e-15);
    CHECK_REL(v.norm(), 2.0, 1e-15);
    auto u = o2_to_vector(make_o2(1.0, 0.0));
    CHECK_REL(u.x, 2.0, 1e-15);
    CHECK_REL(u.norm(), 2.0, 1e-15);
    CHECK_THROWS_AS(o2_to_vector(make_o4(0.0, 0.0, 1.0)), Error);
  }

  TEST_CASE("wigner matrices are unitary") {
    auto rng = make_rng(5, "unitary");
    for (int tj = 1; tj <= 8; ++tj) {
      auto D = wigner_matrix(random_rotation(rng), tj);
      for (int i = 0; i <= tj; ++i)
        for (int k = 0; k <= tj; ++k) {
          cplx s{};
          for (int n = 0; n <= tj; ++n) s += std::conj(D[n][i]) * D[n][k];
          CHECK(std::abs(s - cplx(i == k ? 1.0 : 0.0)) < 1e-13);
        }
    }
  }

  TEST_CASE("product of sections adds spins") {
    auto a = make_o2(cplx(0.2, 0.3), 1.0), b = make_o2(cplx(-0.5, 0.1), 0.4);
    auto p = product(a, b);
    CHECK(p.two_j == 4);
    CHECK(validate_reality(p));
    cplx z(0.7, -0.2);
    auto pa = polynomial(a), pb = polynomial(b), pp = polynomial(p);
    CHECK_REL(eval_polynomial(pp, z), eval_polynomial(pa, z) * eval_polynomial(pb, z), 1e-14);
  }
}
