#include "helpers.hpp"
#include "hkforge/contour.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/sampling.hpp"
#include "hkforge/swann.hpp"

using namespace hkforge;

TEST_SUITE("swann") {
  TEST_CASE("O(2)+O(2) potential examples") {
    CHECK_REL(o2o2_potential({1, 0, 0}, {0, 0, 1}), -2.0, 1e-15);
    CHECK(std::abs(o2o2_potential({1, 2, 3}, {2, 4, 6})) < 1e-15);
    CHECK_THROWS_AS(o2o2_higgs({1, 0, 0}, {0, 0, 0}), Error);
  }

  TEST_CASE("O(2)+O(2): closed form F, quadrature and Legendre assembly") {
    auto m1 = make_o2(cplx(0.3, -0.2), 0.8), m2 = make_o2(cplx(-0.5, 0.4), 1.1);
    auto s = o2o2_state(m1, m2);
    cplx q = o2o2_f_quadrature(m1, m2);
    CHECK_REL(q, cplx(s.F), 1e-10);
    CHECK_REL(s.K, o2o2_potential(s.r1, s.r2), 1e-12);
    CHECK_REL(o2o2_legendre(s.z1, s.x1, s.z2, s.x2), s.K, 1e-12);
  }

  TEST_CASE("O(2)+O(4): F and gradients") {
    auto m2 = make_o2(cplx(0.4, 0.3), -0.6), m4 = make_o4(cplx(0.5, -0.2), cplx(0.3, 0.8), 0.4);
    double F = o2o4_F(m2, m4);
    cplx q = f_uh_quadrature(m2, m4);
    CHECK_REL(q.real(), F, 1e-9);
    CHECK(std::abs(q.imag()) < 1e-9 * std::abs(F));
    auto g = o2o4_gradients(m2, m4), fd = o2o4_gradients_fd(m2, m4);
    double s = std::max({std::abs(fd.dF_dx1), std::abs(fd.dF_dv2), std::abs(fd.dF_dx2)});
    CHECK_REL_F(g.dF_dx1, fd.dF_dx1, 1e-7, s);
    CHECK_REL_F(g.dF_dv2, fd.dF_dv2, 1e-7, s);
    CHECK_REL_F(g.dF_dx2, fd.dF_dx2, 1e-7, s);
    CHECK_REL(dfdx2_quadrature(m2, m4), cplx(g.dF_dx2), 1e-9);
  }

  TEST_CASE("chart boundary and unsolved states") {
    try {
      o2o4_F(make_o2(0.3, 1.0), make_o4(0.0, cplx(0.2, 0.1), 1.0));
      FAIL("expected a chart error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::chart);
    }
    auto st = o2o4_state(make_o2(0.3, 1.0), make_o4(0.5, cplx(0.2, 0.1), 1.0));
    CHECK_FALSE(st.solved);
    CHECK_THROWS_AS(o2o4_potential(st), Error);
  }

  TEST_CASE("constraint solve and compact potential") {
    auto rng = make_rng(9, "solve");
    int solved = 0;
    for (int t = 0; t < 6 && solved < 2; ++t) {
      auto s = solve_by_direction(random_o2(rng), random_o4(rng));
      if (!s) continue;
      ++solved;
      CHECK(s->solved);
      CHECK(std::abs(constraint_value(s->inv, s->dual)) <= 1e-10 * constraint_scale(s->inv, s->dual));
      CHECK_REL(o2o4_potential(*s), s->K, 1e-9);
    }
    CHECK(solved == 2);
  }

  TEST_CASE("Darboux round trip") {
    cplx u2(0.3, -1.2), z2(-0.7, 0.4), u, z;
    from_darboux(to_darboux(u2, z2), u, z);
    CHECK_REL(u, u2, 1e-14);
    CHECK_REL(z, z2, 1e-14);
  }

  TEST_CASE("series report structure") {
    auto r = asymptotic_expansion(Regime::q, 2, 1.0, 0.5, 3.0, 0.2);
    REQUIRE(r.ba.size() == 3);
    CHECK_REL(r.ba[0].coeff, 1.4, 1e-15);
    CHECK_REL(r.ba[1].coeff, -100.8, 1e-15);
    auto p = asymptotic_expansion(Regime::qprime, 1, 1.0, 0.5, 3.0, 0.2);
    REQUIRE(p.ba.size() == 2);
    CHECK_REL(p.ba[1].coeff, -288 * (3 - 6.0), 1e-15);
    CHECK_THROWS_AS(asymptotic_expansion(Regime::q, 3, 1, 1, 1, 1), Error);
    CHECK(regime_from_string("qprime") == Regime::qprime);
    CHECK_THROWS_AS(regime_from_string("p"), Error);
  }

  TEST_CASE("limiting values of B/A") {
    auto q = solved_point(Regime::q, 1e-3);
    CHECK(std::abs(q.ba - 1.4) < 2e-4);
    auto qp = solved_point(Regime::qprime, 1e-6);
    CHECK(std::abs(qp.ba - 1.0) < 1e-6);
  }
}
