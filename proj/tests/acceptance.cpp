// One pass/fail line per acceptance criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>

#include "hkforge/verify.hpp"

using namespace hkforge;

namespace {
struct Criterion {
  int id;
  const char* title;
  double max_seconds;  // 0: no runtime bound
};

const Criterion kCriteria[] = {
    {1, "diagram-oracle suite", 60},
    {2, "rotational invariance", 0},
    {3, "elliptic cross-checks", 0},
    {4, "contour vs closed form", 120},
    {5, "critical-coupling relations", 0},
    {6, "amplitude representation", 0},
    {7, "O(2)+O(2) potential", 0},
    {8, "O(2)+O(4) potential", 0},
    {9, "asymptotic coefficients and degenerate limit", 0},
    {10, "coherent geometry", 0},
};
}  // namespace

int main() {
  RunConfig cfg;
  try {
    apply_environment(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  int failures = 0;
  for (const auto& c : kCriteria) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r;
    std::string err;
    try {
      r = run_criterion(c.id, cfg);
    } catch (const std::exception& e) {
      err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // worst check measured as rel_err / tol
    const CheckResult* worst = nullptr;
    for (const auto& k : r.checks)
      if (!worst || !(k.rel_err / k.tol <= worst->rel_err / worst->tol)) worst = &k;
    bool slow = c.max_seconds > 0 && secs > c.max_seconds;
    bool ok = err.empty() && r.all_pass() && !slow;
    failures += !ok;
    std::printf("[%s] criterion %d %s: ", ok ? "PASS" : "FAIL", c.id, c.title);
    if (!err.empty()) {
      std::printf("error %s\n", err.c_str());
      continue;
    }
    if (worst)
      std::printf("worst %s rel err %.3g (tol %.3g), ", worst->name.c_str(), worst->rel_err, worst->tol);
    std::printf("%d/%zu checks pass, %.2f s", r.passed, r.checks.size(), secs);
    if (c.max_seconds > 0) std::printf(" (limit %.0f s)", c.max_seconds);
    std::printf("\n");
    for (const auto& k : r.checks)
      if (!k.pass) std::printf("    failed %s: rel err %.3g tol %.3g %s\n", k.name.c_str(), k.rel_err, k.tol, k.note.c_str());
  }
  std::printf("%d of 10 criteria pass\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
