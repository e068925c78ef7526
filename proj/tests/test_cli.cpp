#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gvp/cli.h"
#include "gvp/io.h"

using namespace gvp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("gvp_cli_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("simulate: files, manifest, determinism, manifest replay") {
  const auto d = scratch("sim");
  const std::vector<std::string> args = {"simulate", "fbm",     "--hurst", "0.7",   "--steps",        "256",
                                         "--paths",  "20",      "--seed",  "42",    "--out", (d / "a").string()};
  REQUIRE(run(args).code == exit_ok);
  for (const char* f : {"paths.csv", "increments.csv", "paths.json", "manifest.json"}) CHECK(fs::exists(d / "a" / f));
  const auto side = read_json(d / "a" / "paths.json");
  CHECK(side["seed"] == 42);
  CHECK(side["n_steps"] == 256);
  CHECK(side["n_paths"] == 20);
  CHECK(side["scheme"] == "midpoint");
  CHECK(side["kernel"]["label"] == "fbm(H=0.7)");
  const auto man = read_json(d / "a" / "manifest.json");
  CHECK(man["seed"] == 42);
  CHECK(man["simulate"]["hurst"] == 0.7);
  CHECK(man["simulate"]["steps"] == 256);
  CHECK(man["simulate"]["kernel"] == "fbm");

  auto again = args;
  again.back() = (d / "b").string();
  REQUIRE(run(again).code == exit_ok);
  CHECK(slurp(d / "a" / "paths.csv") == slurp(d / "b" / "paths.csv"));

  auto threaded = again;
  threaded.back() = (d / "c").string();
  threaded.push_back("--threads");
  threaded.push_back("3");
  REQUIRE(run(threaded).code == exit_ok);
  CHECK(slurp(d / "a" / "paths.csv") == slurp(d / "c" / "paths.csv"));

  REQUIRE(run({"--config", (d / "a" / "manifest.json").string(), "--out", (d / "r").string()}).code == exit_ok);
  CHECK(slurp(d / "a" / "paths.csv") == slurp(d / "r" / "paths.csv"));
  CHECK(slurp(d / "a" / "increments.csv") == slurp(d / "r" / "increments.csv"));

  std::ifstream is(d / "a" / "paths.csv");
  const PathSet back = read_paths_csv(is);
  CHECK(back.n_paths == 20);
  CHECK(back.n_steps == 256);
  CHECK(back.T == doctest::Approx(1.0));
  for (const auto& x : back.X) CHECK(x[0] == 0.0);
}

TEST_CASE("flat key-value config file") {
  const auto d = scratch("kv");
  fs::create_directories(d);
  std::ofstream(d / "run.ini") << "seed = 9\n[simulate]\nkernel = \"wiener\"\nsteps = 64\npaths = 3\n";
  REQUIRE(run({"--config", (d / "run.ini").string(), "--out", (d / "o").string()}).code == exit_ok);
  const auto side = read_json(d / "o" / "paths.json");
  CHECK(side["seed"] == 9);
  CHECK(side["n_steps"] == 64);
  CHECK(side["kernel"]["wiener"] == true);
}

TEST_CASE("exit codes") {
  const auto d = scratch("codes");
  fs::create_directories(d);
  std::ofstream(d / "bad.json") << R"({"a":{"coef":1,"exponent":0},"b":{"coef":1,"exponent":0},)"
                                << R"("c":{"coef":1,"exponent":-0.5},"p":2,"q":1.6666666666666667,"r":1.6666666666666667})";
  const auto r = run({"simulate", "triple", "--spec", (d / "bad.json").string(), "--out", d.string()});
  CHECK(r.code == exit_admissibility);
  CHECK(r.err.find("3/2") != std::string::npos);
  CHECK(run({"sonine", "verify", "--pair", "nope", "--out", d.string()}).code == exit_config);
  CHECK(run({"simulate", "fbm", "--hurst", "1.2", "--out", d.string()}).code == exit_config);
  CHECK(run({"simulate", "fbm", "--steps", "1", "--out", d.string()}).code == exit_config);
  CHECK(run({"simulate", "fbm", "--scheme", "leftpoint", "--out", d.string()}).code == exit_numerical);
  CHECK(run({"invert", "wiener", "--out", d.string()}).code == exit_config);
  CHECK(run({"simulate", "triple", "--out", d.string()}).code == exit_config);
  CHECK(run({"frobnicate"}).code == exit_config);
  CHECK(run({}).code == exit_config);
  CHECK(run({"--help"}).code == exit_ok);
  CHECK(run({"kernel-check", "triple", "--spec", (d / "bad.json").string(), "--out", d.string()}).code ==
        exit_admissibility);
}

TEST_CASE("sonine verify and solve") {
  const auto d = scratch("sonine");
  REQUIRE(run({"sonine", "verify", "--pair", "coshcos", "--n", "1024", "--out", d.string()}).code == exit_ok);
  const auto v = read_json(d / "sonine_verify.json");
  for (const char* k : {"pair", "n", "max_deviation", "nodes_checked"}) CHECK(v.contains(k));
  CHECK(v["max_deviation"].get<double>() < 1e-3);
  REQUIRE(run({"sonine", "solve", "--alpha", "0.6", "--beta", "-1", "--n", "512", "--out", d.string()}).code == exit_ok);
  const auto s = read_json(d / "sonine_solve.json");
  CHECK(s["defect"].get<double>() < 1e-3);
  CHECK(s["positivity"] == true);
  CHECK(fs::exists(d / "sonine_pair.csv"));
}

TEST_CASE("kernel-check, frac-test, holder, invert") {
  const auto d = scratch("misc");
  REQUIRE(run({"kernel-check", "fbm", "--hurst", "0.75", "--out", d.string()}).code == exit_ok);
  const auto k = read_json(d / "kernel_check.json");
  CHECK(k["max_constancy_residual"].get<double>() < 1e-4);
  CHECK(k["constancy"].size() == 5);
  CHECK(k["admissibility"]["verdict"] == "continuous_modification");
  for (const char* f : {"lambda_global", "lambda_interior", "lambda_at_zero", "lambda_limit"})
    CHECK(k["predicted_exponents"][f].is_number());

  REQUIRE(run({"frac-test", "--alpha", "0.5", "--n", "512", "--out", d.string()}).code == exit_ok);
  CHECK(read_json(d / "frac_test.json")["all_pass"] == true);

  REQUIRE(run({"holder", "wiener", "--steps", "512", "--paths", "60", "--resamples", "50", "--out", d.string()}).code ==
          exit_ok);
  const auto h = read_json(d / "holder.json");
  for (const char* f : {"estimate", "ci", "lags", "predicted_exponents"}) CHECK(h.contains(f));
  CHECK(std::abs(h["estimate"].get<double>() - 0.5) < 0.05);

  REQUIRE(run({"invert", "fbm", "--steps", "256", "--paths", "40", "--seed", "7", "--out", d.string()}).code == exit_ok);
  const auto i = read_json(d / "invert.json");
  CHECK(i["corr"].get<double>() >= 0.95);
  CHECK(fs::exists(d / "recovered.csv"));
}
