#include "helpers.hpp"
#include "hkforge/diagram.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/json_io.hpp"
#include "hkforge/sampling.hpp"

using namespace hkforge;

TEST_SUITE("invariants") {
  TEST_CASE("g_sigma2 examples") {
    CHECK_REL(g_sigma2(make_o2(0.0, 2.0)), 4.0, 1e-15);
    CHECK_REL(g_sigma2(make_o2(1.0, 0.0)), 4.0, 1e-15);
  }

  TEST_CASE("O(4) basic examples") {
    auto b = o4_basic_invariants(make_o4(0.0, 0.0, 3.0));
    CHECK_REL(b.g_rho2, 3.0, 1e-15);
    CHECK_REL(b.g_rho3, -2.0, 1e-15);
    auto r = o4_basic_from_roots(2.0, std::sqrt(0.5));
    CHECK_REL(r.g_rho2, 1.0, 1e-14);
    CHECK(std::abs(r.g_rho3) < 1e-14);
    auto br = branch_points(2.0, std::sqrt(0.5));
    CHECK_REL(br.e1, 1.0, 1e-14);
    CHECK(std::abs(br.e2) < 1e-14);
    CHECK_REL(br.e3, -1.0, 1e-14);
  }

  TEST_CASE("hand-written square diagram matches the figure") {
    // square of four O(2) vertices with alternating arrows: g_sigma2^2 / 8
    Json j = Json::parse(R"({"vertices":[{"id":"t1","rank":2},{"id":"t2","rank":2},{"id":"t3","rank":2},{"id":"t4","rank":2}],
      "edges":[[["t1",1],["t2",0],1],[["t3",0],["t2",1],1],[["t3",1],["t4",0],1],[["t1",0],["t4",1],1]]})");
    auto d = diagram_from_json(j);
    auto m2 = make_o2(cplx(0.3, -0.8), 1.2);
    TensorMap t{{"o2", tensor_of(m2)}};
    double gs = g_sigma2(m2);
    CHECK_REL(contract_diagram(d, t), cplx(gs * gs / 8), 1e-14);
    CHECK_REL(contract_diagram_serial(d, t), cplx(gs * gs / 8), 1e-14);
  }

  TEST_CASE("diagram validation") {
    Diagram open;
    open.vertices = {{"a", 2, "o2"}, {"b", 2, "o2"}};
    open.edges = {{{0, 0}, {1, 0}, 1}};
    CHECK_THROWS_AS(validate_diagram(open), Error);
    Json bad = Json::parse(R"({"vertices":[{"id":"t1","rank":2}],"edges":[[["t1",0],["t9",1],1]]})");
    CHECK_THROWS_AS(diagram_from_json(bad), Error);
    auto big = o4_double_polygon(7);
    CHECK_THROWS_AS(validate_diagram(big), Error);  // 28 slots exceed the cap
  }

  TEST_CASE("figure identities on one random pair") {
    auto rng = make_rng(1, "figures");
    auto m2 = random_o2(rng), m4 = random_o4(rng);
    auto b = o4_basic_invariants(m4);
    auto mx = mixed_invariants(m2, m4);
    BasicValues bv{g_sigma2(m2), b.g_rho2, b.g_rho3, mx.g_rho_sigma2, mx.g_rho2_sigma2};
    auto T = standard_tensors(m2, m4);
    for (auto& f : standard_figures()) {
      INFO(f.name);
      double want = f.expected(bv);
      cplx got = contract_diagram(f.diagram, T);
      CHECK(std::abs(got - want) <= 1e-11 * std::max(1.0, std::abs(want)));
    }
  }

  TEST_CASE("coincident roots: A = cos^2 delta - 1/3 and B = A") {
    auto p = SpherePoint::at(cplx(0.2, -0.5));
    auto m2 = roots_to_coefficients({2, 1.3, {p}});
    auto m4 = roots_to_coefficients({4, 1.7, {p, p}});
    CHECK_REL(mixed_invariants(m2, m4).g_rho_sigma2, 2.0 / 3 * 1.7 * 1.3 * 1.3, 1e-13);
    auto a = angular_invariants(m2, m4);
    CHECK_REL(a.A, 2.0 / 3, 1e-13);
    CHECK_REL(a.B, a.A, 1e-13);
    // gamma orthogonal to the double root: delta = pi/2
    auto m2o = roots_to_coefficients({2, 1.0, {SpherePoint::at(1)}});
    auto m4o = roots_to_coefficients({4, 1.0, {SpherePoint::at(0), SpherePoint::at(0)}});
    CHECK_REL(angular_invariants(m2o, m4o).A, -1.0 / 3, 1e-13);
  }

  TEST_CASE("Q factors: geodesic and orthogonal triples") {
    auto gc = q_factors({2, 1.0, {SpherePoint::at(0.3)}}, {4, 1.0, {SpherePoint::at(-2.0), SpherePoint::at(0.9)}});
    CHECK(std::abs(gc.Q0sq) < 1e-14);
    auto o = q_factors({2, 1.0, {SpherePoint::at(0)}}, {4, 1.0, {SpherePoint::at(1), SpherePoint::at(kI)}});
    CHECK_REL(o.Q0sq, 1.0, 1e-14);
    CHECK(std::abs(o.Qplussq) < 1e-14);
    CHECK(std::abs(o.Qminussq) < 1e-14);
  }

  TEST_CASE("lambda family at zero and against the literal combination") {
    auto m2 = make_o2(0.4, 1.1), m4 = make_o4(0.3, kI, 0.5);
    auto l = lambda_family(m2, m4, 0.0);
    auto b = o4_basic_invariants(m4);
    CHECK_REL(l.g2, b.g_rho2, 1e-15);
    CHECK_REL(l.g3, b.g_rho3, 1e-15);
    auto a = lambda_family(m2, m4, 0.8), c = lambda_family_literal(m2, m4, 0.8);
    CHECK_REL(a.g2, c.g2, 1e-13);
    CHECK_REL(a.g3, c.g3, 1e-13);
  }

  TEST_CASE("Clebsch-Gordan values") {
    CHECK_REL(clebsch_gordan(1, 1, 1, -1, 0, 0), 1 / std::sqrt(2.0), 1e-15);
    CHECK_REL(clebsch_gordan(1, 1, 1, 1, 2, 2), 1.0, 1e-15);
    CHECK_REL(clebsch_gordan(2, 0, 2, 0, 0, 0), -1 / std::sqrt(3.0), 1e-15);
    CHECK(clebsch_gordan(2, 2, 2, 2, 2, 2) == 0.0);  // M mismatch
  }

  TEST_CASE("degenerate angular invariants") {
    CHECK_THROWS_AS(angular_invariants(make_o2(0.0, 0.0), make_o4(0.0, 0.0, 1.0)), Error);
  }
}
