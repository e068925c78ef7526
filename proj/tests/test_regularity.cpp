#include <cmath>

#include "doctest.h"
#include "gvp/errors.h"
#include "gvp/regularity.h"

using namespace gvp;

namespace {

// mean and standard error of per-path variogram values at one lag
std::pair<double, double> per_path_stats(const PathSet& ps, std::size_t lag) {
  std::vector<double> v;
  for (const auto& x : ps.X) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag <= ps.n_steps; ++i) s += (x[i + lag] - x[i]) * (x[i + lag] - x[i]);
    v.push_back(s / static_cast<double>(ps.n_steps - lag + 1));
  }
  double m = 0.0, m2 = 0.0;
  for (double a : v) {
    m += a;
    m2 += a * a;
  }
  const double n = static_cast<double>(v.size());
  m /= n;
  return {m, std::sqrt((m2 / n - m * m) / n)};
}

PathSet sim(const KernelTriple& kt, std::size_t n, std::size_t paths, std::uint64_t seed) {
  SimulationConfig cfg;
  cfg.n_steps = n;
  cfg.n_paths = paths;
  cfg.seed = seed;
  return simulate(kt, cfg);
}

}  // namespace

TEST_CASE("default lags") {
  CHECK(default_lags(2048) == std::vector<std::size_t>{1, 2, 4, 8, 16, 32});
  CHECK(default_lags(64) == std::vector<std::size_t>{1, 2, 4, 8});
  CHECK(default_lags(8) == std::vector<std::size_t>{1});
}

TEST_CASE("variogram: Wiener and fBm") {
  const auto w = sim(KernelTriple::wiener_process(), 1024, 200, 3);
  const std::vector<std::size_t> lags = {1, 2, 4, 8, 16, 32};
  const auto v = variogram(w, lags);
  for (std::size_t m = 0; m < lags.size(); ++m) {
    const auto [mean, se] = per_path_stats(w, lags[m]);
    CHECK(v[m] == doctest::Approx(mean).epsilon(1e-12));
    CHECK(std::abs(v[m] - lags[m] * w.step()) <= 5.0 * se);
  }
  const FBmSpec f(0.7);
  const auto b = sim(f.triple(), 1024, 200, 4);
  const auto vb = variogram(b, lags);
  for (std::size_t m = 0; m < lags.size(); ++m) {
    const auto [mean, se] = per_path_stats(b, lags[m]);
    CHECK(std::abs(vb[m] - std::pow(lags[m] * b.step(), 1.4)) <= 5.0 * se + 0.03 * vb[m]);
  }
}

TEST_CASE("variogram: constant paths and preconditions") {
  PathSet ps;
  ps.n_steps = 64;
  ps.n_paths = 60;
  ps.X.assign(60, std::vector<double>(65, 2.5));
  const auto v = variogram(ps, {1, 2, 4});
  for (double x : v) CHECK(x == 0.0);
  CHECK_THROWS_AS(estimate_holder(ps), numerical_error);
  CHECK_THROWS_AS(variogram(ps, {16}), config_error);
  CHECK_THROWS_AS(variogram(ps, {0}), config_error);
  PathSet few = ps;
  few.n_paths = 10;
  few.X.resize(10);
  CHECK_THROWS_AS(estimate_holder(few), config_error);
}

TEST_CASE("estimate_holder: fBm, Wiener, band, determinism") {
  const FBmSpec f(0.7);
  const auto b = sim(f.triple(), 1024, 100, 21);
  EstimateOptions o;
  o.seed = 5;
  const auto r = estimate_holder(b, o);
  CHECK(r.ci_low <= r.estimate);
  CHECK(r.estimate <= r.ci_high);
  CHECK(std::abs(r.estimate - 0.7) <= 0.05);
  o.threads = 1;
  const auto r1 = estimate_holder(b, o);
  o.threads = 4;
  const auto r4 = estimate_holder(b, o);
  CHECK(r1.ci_low == r4.ci_low);
  CHECK(r1.ci_high == r4.ci_high);
  CHECK(r.ci_low == r1.ci_low);

  o.window_start = 0.5;
  const auto ri = estimate_holder(b, o);
  const bool agree = (ri.estimate >= r.ci_low && ri.estimate <= r.ci_high) ||
                     (r.estimate >= ri.ci_low && r.estimate <= ri.ci_high);
  CHECK(agree);

  const auto w = sim(KernelTriple::wiener_process(), 1024, 100, 22);
  CHECK(std::abs(estimate_holder(w).estimate - 0.5) <= 0.05);
}

TEST_CASE("loglog_exponent recovers exact power laws") {
  const std::vector<std::size_t> lags = {1, 2, 4, 8};
  std::vector<double> v;
  for (std::size_t l : lags) v.push_back(3.0 * std::pow(l * 0.01, 2.0 * 0.63));
  CHECK(loglog_exponent(lags, v, 0.01) == doctest::Approx(0.63).epsilon(1e-12));
}
