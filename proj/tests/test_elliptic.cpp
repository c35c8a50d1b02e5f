#include "helpers.hpp"
#include "hkforge/elliptic.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/quadrature.hpp"
#include "hkforge/sampling.hpp"

using namespace hkforge;

TEST_SUITE("elliptic") {
  TEST_CASE("complete integrals against known values") {
    auto c = complete_integrals(0.0, 1.0);
    CHECK_REL(c.K, kPi / 2, 1e-15);
    CHECK_REL(c.E, kPi / 2, 1e-15);
    // K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt(pi))
    double k = 1 / std::sqrt(2.0);
    auto h = complete_integrals(k, k);
    CHECK_REL(h.K, std::pow(std::tgamma(0.25), 2) / (4 * std::sqrt(kPi)), 1e-14);
    // Legendre relation for complete integrals at k = k'
    CHECK_REL(2 * h.E * h.K - h.K * h.K, kPi / 2, 1e-14);
  }

  TEST_CASE("tanh-sinh against an endpoint singularity") {
    // int_0^1 dx / sqrt(x) = 2
    auto r = tanh_sinh([](double, double from_a, double) { return 1 / std::sqrt(from_a); }, 0, 1);
    CHECK_REL(r.value, 2.0, 1e-13);
  }

  TEST_CASE("from_modulus round trip through the invariants") {
    for (double k : {0.1, 0.5, 0.9}) {
      auto d = from_modulus(2.0, k);
      CHECK_REL(-(d.e1 * d.e2 + d.e2 * d.e3 + d.e3 * d.e1), d.g2, 1e-13);
      CHECK_REL(d.e1 * d.e2 * d.e3, d.g3, 1e-13);
      auto b = from_invariants(d.g2, d.g3);
      CHECK_REL(b.omega, d.omega, 1e-13);
      CHECK_REL(b.eta, d.eta, 1e-13);
      CHECK_REL(b.r2, 1 / (2 * d.omega), 1e-15);
    }
    CHECK_REL(from_modulus(1.0, 1e-9).omega, kPi / 2, 1e-15);
    CHECK_THROWS_AS(from_modulus(1.0, 1.5), Error);
    CHECK_THROWS_AS(from_modulus(-1.0, 0.5), Error);
  }

  TEST_CASE("pinched torus") {
    try {
      from_multiplet(make_o4(0.0, 0.0, 3.0));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::pinched);
    }
  }

  TEST_CASE("Legendre relation") {
    auto rng = make_rng(2, "legendre");
    for (int t = 0; t < 50; ++t) {
      auto d = from_multiplet(random_o4(rng));
      cplx leg = d.omega_prime * d.eta - d.omega * d.eta_prime;
      CHECK(std::abs(leg - cplx(0, kPi / 2)) < 1e-12 * kPi / 2);
    }
  }

  TEST_CASE("nome inversion") {
    for (double k : {0.2, 0.6, 0.95}) {
      auto d = from_modulus(1.0, k);
      auto m = modulus_from_q(d.q);
      CHECK_REL(m.k, k, 1e-13);
      auto mp = modulus_from_qprime(d.q_prime);
      CHECK_REL(mp.k, k, 1e-12);
    }
  }

  TEST_CASE("Lambert series and truncation estimate") {
    auto d = from_modulus(1.0, 0.3);
    auto s = lambert_g2_g3_eta(d, false, 12);
    CHECK_REL(s.g2, d.g2, 1e-13);
    CHECK_REL(s.g3, d.g3, 1e-13);
    CHECK_REL(s.eta, d.eta, 1e-13);
    // the q' branch at small k is truncation-limited and says so
    auto far = lambert_g2_g3_eta(from_modulus(1.0, 0.1), true, 12);
    CHECK(far.last_term > 1e-8);
    CHECK_THROWS_AS(lambert_g2_g3_eta(d, false, -1), Error);
  }

  TEST_CASE("pi function: oracle and error cases") {
    auto d = from_modulus(1.3, 0.6);
    double X0 = d.e1 + 0.8;
    double u0 = abel_map_real(d, X0);
    cplx p = pi_function(d, X0, -1);
    CHECK_REL(p.real(), u0 * d.eta - d.omega * weierstrass_zeta(d, u0), 1e-12);
    CHECK_THROWS_AS(pi_function(d, d.e2, cplx(1, 0)), Error);
    CHECK_THROWS_AS(pi_function(d, X0, cplx(0, 0)), Error);
  }

  TEST_CASE("derivatives of omega and eta") {
    auto d = from_invariants(3.1, 0.7);
    auto D = differentials(d);
    double h = 1e-5;
    auto p = from_invariants(3.1 + h, 0.7), m = from_invariants(3.1 - h, 0.7);
    CHECK_REL(D.domega_dg2, (p.omega - m.omega) / (2 * h), 1e-8);
    CHECK_REL(D.deta_dg2, (p.eta - m.eta) / (2 * h), 1e-8);
    auto p3 = from_invariants(3.1, 0.7 + h), m3 = from_invariants(3.1, 0.7 - h);
    CHECK_REL(D.domega_dg3, (p3.omega - m3.omega) / (2 * h), 1e-8);
    CHECK_REL(D.deta_dg3, (p3.eta - m3.eta) / (2 * h), 1e-8);
  }
}
