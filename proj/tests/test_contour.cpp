#include "helpers.hpp"
#include "hkforge/contour.hpp"
#include "hkforge/elliptic.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/quadrature.hpp"
#include "hkforge/sampling.hpp"

using namespace hkforge;

TEST_SUITE("contour") {
  TEST_CASE("O(2) integral equals 2/sigma") {
    auto m = roots_to_coefficients({2, 2.0, {SpherePoint::at(cplx(0.4, 0.1))}});
    const double sigma = o2_to_vector(m).norm();
    CHECK_REL(integrate_o2_invariant(m), 2 / sigma, 1e-12);
    auto R = SU2Element::from_euler(0.3, 1.2, -0.4);
    CHECK_REL(integrate_o2_invariant(wigner_rotate(R, m)), 2 / sigma, 1e-10);
  }

  TEST_CASE("periods against K and K'") {
    auto m4 = make_o4(cplx(0.3, 0.4), cplx(-0.2, 0.9), 0.7);
    auto d = from_multiplet(m4);
    auto P = o4_periods(m4);
    CHECK_REL(P.Ia, cplx(2 * d.K / std::sqrt(d.rho)), 1e-10);
    CHECK_REL(P.Ib, cplx(0, 2 * d.Kp / std::sqrt(d.rho)), 1e-10);
    CHECK(P.Ia.real() > 0);
    CHECK(P.Ib.imag() > 0);
  }

  TEST_CASE("coincident roots are near-degenerate for Gamma_b") {
    try {
      build_contour(ContourKind::gamma_b, std::nullopt,
                    RootConstellation{4, 1.0, {SpherePoint::at(0.3), SpherePoint::at(0.3 + 1e-13)}});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::near_degenerate);
    }
  }

  TEST_CASE("contour kinds parse") {
    CHECK(contour_kind_from_string("gamma_plus") == ContourKind::gamma_plus);
    CHECK(std::string(to_string(ContourKind::gamma_a)) == "gamma_a");
    CHECK_THROWS_AS(contour_kind_from_string("delta"), Error);
  }

  TEST_CASE("winding numbers") {
    Loop l;
    l.center = cplx(1, 1);
    l.radius = 0.5;
    CHECK(std::abs(winding_number(l, SpherePoint::at(cplx(1.1, 1)))) == 1);
    CHECK(winding_number(l, SpherePoint::at(cplx(3, 1))) == 0);
    // (z - 1 - i)(z - 5)
    std::vector<cplx> p{cplx(1, 1) * 5.0, -cplx(6, 1), 1.0};
    CHECK(enclosed_zero_count(l, p) == 1);
  }

  TEST_CASE("I family: chart flag at z2 = 0") {
    auto f = i1_family(make_o4(0.0, cplx(0.5, 0.2), 1.0));
    CHECK_FALSE(f.chart_ok);
    auto d = from_multiplet(make_o4(0.0, cplx(0.5, 0.2), 1.0));
    CHECK_REL(f.I0, cplx(2 * d.omega), 1e-10);
  }

  TEST_CASE("serial and parallel kernels agree") {
    auto c = build_contour(ContourKind::gamma_a, std::nullopt, coefficients_to_roots(make_o4(0.4, cplx(0.1, 1), 0.2)));
    auto s = sample_loop_serial(c.loops[0], 2048), p = sample_loop_parallel(c.loops[0], 2048);
    for (size_t i = 0; i < s.z.size(); ++i) {
      CHECK(s.z[i] == p.z[i]);
      CHECK(s.sqrt_p[i] == p.sqrt_p[i]);
    }
    auto f = [](cplx z, cplx sp) { return z / sp; };
    CHECK(std::abs(trapezoid_serial(s, f) - trapezoid_parallel(s, f)) < 1e-14);
    std::vector<cplx> v(1000);
    for (size_t i = 0; i < v.size(); ++i) v[i] = cplx(std::sin(i * 0.1), std::cos(i * 0.3));
    CHECK(std::abs(periodic_sum_serial(v) - periodic_sum_parallel(v)) < 1e-13);
  }

  TEST_CASE("chart rotation keeps points bounded") {
    std::vector<SpherePoint> pts{SpherePoint::infinity(), SpherePoint::at(1e6), SpherePoint::at(0.3)};
    auto R = chart_rotation(pts);
    for (auto& p : pts) {
      auto q = mobius_apply(R, p);
      CHECK_FALSE(q.inf);
      CHECK(std::abs(q.z) <= 20.0);
    }
  }
}
