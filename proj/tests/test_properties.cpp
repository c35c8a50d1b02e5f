#include "helpers.hpp"

#include <algorithm>
#include <set>

#include "hkforge/coherent.hpp"
#include "hkforge/contour.hpp"
#include "hkforge/diagram.hpp"
#include "hkforge/elliptic.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/sampling.hpp"
#include "hkforge/verify.hpp"

using namespace hkforge;

namespace {
// Property checks of one module, i.e. every registered check that covers a property id.
VerificationReport module_properties(const std::string& module, std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  return run_checks(module + "-properties",
                    [&](const CheckSpec& c) { return c.module == module && !c.properties.empty(); }, cfg);
}

void require_clean(const VerificationReport& r) {
  for (const auto& c : r.checks) {
    INFO(c.name << " rel_err=" << c.rel_err << " tol=" << c.tol << " " << c.note);
    CHECK(c.pass);
  }
  CHECK(r.all_pass());
}
}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("Wigner rotation is linear and unitary") {
    auto rng = make_rng(11, "linear");
    for (int t = 0; t < 50; ++t) {
      int tj = 1 + int(rng() % 6);
      auto a = random_multiplet(rng, tj), b = random_multiplet(rng, tj);
      auto R = random_rotation(rng);
      auto lhs = wigner_rotate(R, a + b), rhs = wigner_rotate(R, a) + wigner_rotate(R, b);
      CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * (max_abs(a) + max_abs(b)));
      double na = 0, nr = 0;
      for (auto c : a.coeffs) na += std::norm(c);
      for (auto c : wigner_rotate(R, a).coeffs) nr += std::norm(c);
      CHECK_REL(nr, na, 1e-12);
    }
  }

  TEST_CASE("invariants are rotation invariant on random data") {
    auto rng = make_rng(12, "inv");
    for (int t = 0; t < 30; ++t) {
      auto m2 = random_o2(rng), m4 = random_o4(rng);
      auto R = random_rotation(rng);
      auto a = invariant_set(m2, m4), b = invariant_set(wigner_rotate(R, m2), wigner_rotate(R, m4));
      const double s2 = a.g_sigma2, s4 = std::sqrt(std::abs(a.g_rho2));
      CHECK_REL_F(b.g_sigma2, a.g_sigma2, 1e-11, s2);
      CHECK_REL_F(b.g_rho2, a.g_rho2, 1e-11, s4 * s4);
      CHECK_REL_F(b.g_rho3, a.g_rho3, 1e-11, s4 * s4 * s4);
      CHECK_REL_F(b.g_rho_sigma2, a.g_rho_sigma2, 1e-11, s4 * s2);
    }
  }

  TEST_CASE("overlap modulus depends only on the angle") {
    auto rng = make_rng(13, "overlap");
    for (int t = 0; t < 40; ++t) {
      auto p = random_sphere_point(rng), q = random_sphere_point(rng);
      int tj = 1 + int(rng() % 5);
      double c = dot(unit_vector(p), unit_vector(q));
      double want = std::pow((1 + c) / 2, tj / 2.0);
      CHECK_REL(coherent_overlap(p, q, tj).modulus, want, 1e-12);
    }
  }

  TEST_CASE("serial and parallel contraction agree on every figure") {
    auto rng = make_rng(14, "figures");
    auto t = standard_tensors(random_o2(rng), random_o4(rng));
    for (const auto& f : standard_figures()) {
      cplx s = contract_diagram_serial(f.diagram, t), p = contract_diagram_parallel(f.diagram, t);
      INFO(f.name);
      CHECK(std::abs(s - p) <= 1e-13 * std::max(1.0, std::abs(s)));
    }
  }

  TEST_CASE("registered property checks pass per module") {
    for (const auto& m : module_names()) {
      if (m == "swann" || m == "cli") continue;  // covered by the acceptance run
      INFO(m);
      require_clean(module_properties(m, 2024));
    }
  }

  TEST_CASE("registry covers every required property") {
    std::set<std::string> have;
    for (const auto& c : check_registry()) have.insert(c.properties.begin(), c.properties.end());
    for (const auto& p : required_properties()) {
      INFO(p);
      CHECK(have.count(p) == 1);
    }
  }
}
