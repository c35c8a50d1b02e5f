#include "helpers.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "hkforge/json_io.hpp"
#include "hkforge/verify.hpp"

using namespace hkforge;
namespace fs = std::filesystem;

namespace {
const std::string kBin = HKFORGE_BIN;
const std::string kData = HKFORGE_DATA;

fs::path scratch_dir() {
  auto d = fs::temp_directory_path() / "hkforge_cli_tests";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the binary with stdout captured to a file; returns the exit status.
int run(const std::string& args, std::string* out = nullptr, const std::string& env = "") {
  auto o = scratch_dir() / "stdout.txt";
  std::string cmd = env + (env.empty() ? "" : " ") + "\"" + kBin + "\" " + args + " > \"" + o.string() + "\" 2>/dev/null";
  int st = std::system(cmd.c_str());
  if (out) *out = slurp(o);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string data(const std::string& f) { return "\"" + kData + "/" + f + "\""; }

fs::path write_tmp(const std::string& name, const std::string& text) {
  auto p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("run config parsing") {
    auto c = run_config_from_json(Json::parse(R"({"seed":42,"nodes":1024,"tolerances":{"contour.periods":1e-6},
                                                 "tolerance_all":1e-3,"format":"table"})"));
    CHECK(c.seed == 42);
    CHECK(c.nodes == 1024);
    CHECK(c.tolerances.at("contour.periods") == 1e-6);
    CHECK(*c.tolerance_all == 1e-3);
    CHECK(c.format == "table");
    CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"nodes":"many"})")), Error);
    CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"bogus":1})")), Error);
    RunConfig bad;
    bad.format = "xml";
    CHECK_THROWS_AS(validate_run_config(bad), Error);
    auto f = load_run_config(kData + "/verify_config.json");
    CHECK(f.seed == 7);
  }

  TEST_CASE("HKFORGE_SEED overrides the configured seed") {
    RunConfig c;
    setenv("HKFORGE_SEED", "99", 1);
    apply_environment(c);
    CHECK(c.seed == 99);
    setenv("HKFORGE_SEED", "nope", 1);
    CHECK_THROWS_AS(apply_environment(c), Error);
    unsetenv("HKFORGE_SEED");
    apply_environment(c);
    CHECK(c.seed == 99);
  }

  TEST_CASE("reports are deterministic and tolerance overrides fail checks") {
    RunConfig c;
    auto a = report_to_json(run_verification("coherent", c)).dump();
    auto b = report_to_json(run_verification("coherent", c)).dump();
    CHECK(a == b);
    c.tolerance_all = 1e-16;
    auto r = run_verification("coherent", c);
    CHECK(r.failed > 0);
    CHECK_FALSE(r.all_pass());
    CHECK_THROWS_AS(run_verification("nope", c), Error);
    auto t = report_to_table(run_verification("multiplet", RunConfig{}));
    CHECK(t.find("multiplet.round-trip") != std::string::npos);
  }

  TEST_CASE("registry check names and anchors") {
    std::set<std::string> names;
    for (const auto& c : check_registry()) {
      CHECK(names.insert(c.name).second);
      CHECK_FALSE(c.anchor.empty());
      CHECK(c.name.rfind(c.module + ".", 0) == 0);
    }
  }

  TEST_CASE("binary: subcommands succeed on sample data") {
    std::string out;
    CHECK(run("invariants --o2 " + data("o2.json") + " --o4 " + data("o4.json"), &out) == 0);
    auto j = Json::parse(out);
    CHECK(j.at("invariants").contains("g_sigma2"));
    CHECK(run("invariants --o2 " + data("o2.json") + " --diagram " + data("square.json"), &out) == 0);
    CHECK(run("periods --o4 " + data("o4.json") + " --series", &out) == 0);
    CHECK(run("contour --kind gamma_a --o4 " + data("o4.json"), &out) == 0);
    CHECK(run("contour --kind gamma --o2 " + data("o2.json"), &out) == 0);
    CHECK(run("coherent overlap --a 0.3,0.1 --b inf --two-j 3", &out) == 0);
    CHECK(run("coherent phase --points 0,0 1,0 0,1", &out) == 0);
    CHECK(run("coherent factorize --multiplet " + data("o4.json"), &out) == 0);
    CHECK(run("potential --model o2o2 --o2 " + data("o2.json") + " --o2b " + data("o2b.json"), &out) == 0);
    CHECK(run("expand --regime q --order 2", &out) == 0);
  }

  TEST_CASE("binary: output is deterministic") {
    std::string a, b;
    REQUIRE(run("verify --suite multiplet --seed 5", &a) == 0);
    REQUIRE(run("verify --suite multiplet --seed 5", &b) == 0);
    CHECK(a == b);
    std::string e;
    REQUIRE(run("verify --suite multiplet", &e, "HKFORGE_SEED=5") == 0);
    CHECK(e == a);
    CHECK(Json::parse(a).at("seed") == 5);
  }

  TEST_CASE("binary: exit codes") {
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("periods") == 2);
    CHECK(run("periods --o4 /nonexistent.json") == 2);
    auto bad_json = write_tmp("bad.json", R"({"j":2,"coeffs":[[1,0]]})");
    CHECK(run("periods --o4 \"" + bad_json.string() + "\"") == 2);
    auto unreal = write_tmp("unreal.json", R"({"j":1,"coeffs":[[1,0],[0.5,0],[1,0]]})");
    CHECK(run("invariants --o2 \"" + unreal.string() + "\"") == 3);
    auto pinched = write_tmp("pinched.json", R"({"j":2,"scale":1,"roots":[[0.3,0.2],[0.3,0.2]]})");
    CHECK(run("periods --o4 \"" + pinched.string() + "\"") == 3);
    auto p = (scratch_dir() / "plot.csv").string();
    CHECK(run("plot --kind expansion --regime q --from 0.01 --to 0.001 --out \"" + p + "\"") == 2);
    CHECK(run("verify --suite coherent --tol 1e-16") == 1);
    CHECK(run("verify --suite nope") == 2);
    CHECK(run("verify --suite coherent --format xml") == 2);
    CHECK(run("verify --suite coherent --config " + data("verify_config.json")) == 0);
  }

  TEST_CASE("binary: plot writes CSV") {
    auto p = scratch_dir() / "sweep.csv";
    REQUIRE(run("plot --kind expansion --regime q --from 0.001 --to 0.004 --points 3 --out \"" + p.string() + "\"") == 0);
    auto csv = slurp(p);
    CHECK(csv.rfind("nome,B_over_A,B_over_A_series,status", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  }

  TEST_CASE("multiplet JSON round trip") {
    auto m = multiplet_from_json(Json::parse(R"({"j":2,"coeffs":[[1,2],[0.5,-0.25],[3,0],[-0.5,-0.25],[1,-2]]})"));
    auto back = multiplet_from_json(multiplet_to_json(m));
    CHECK(max_abs_diff(m, back) == 0.0);
    auto r = multiplet_from_json(Json::parse(R"({"j":1,"scale":2,"roots":["inf"]})"));
    CHECK(r.two_j == 2);
    CHECK_THROWS_AS(multiplet_from_json(Json::parse(R"({"j":1})")), Error);
  }
}
