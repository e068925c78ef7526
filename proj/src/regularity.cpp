#include "gvp/regularity.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "gvp/errors.h"
#include "gvp/parallel.h"

namespace gvp {

namespace {

void check_lags(const PathSet& paths, const std::vector<std::size_t>& lags, std::size_t from_node) {
  if (lags.empty()) throw config_error("variogram: no lags");
  if (paths.n_paths == 0 || paths.X.size() != paths.n_paths) throw config_error("variogram: no paths");
  const std::size_t n = paths.n_steps;
  for (std::size_t l : lags) {
    if (l == 0) throw config_error("variogram: lags must be positive");
    if (!(4 * l < n)) throw config_error("variogram: insufficient data, lag " + std::to_string(l) + " is not below n_steps/4");
    if (from_node + l > n) throw config_error("variogram: insufficient data in the window");
  }
}

// Per-path sums of squared increments and pair counts for each lag.
std::vector<std::vector<double>> per_path_sums(const PathSet& paths, const std::vector<std::size_t>& lags,
                                               std::size_t from_node, unsigned threads) {
  std::vector<std::vector<double>> out(paths.n_paths, std::vector<double>(lags.size(), 0.0));
  parallel_for(paths.n_paths, threads, [&](std::size_t k) {
    const auto& x = paths.X[k];
    for (std::size_t m = 0; m < lags.size(); ++m) {
      const std::size_t l = lags[m];
      double s = 0.0;
      for (std::size_t i = from_node; i + l <= paths.n_steps; ++i) {
        const double d = x[i + l] - x[i];
        s += d * d;
      }
      out[k][m] = s;
    }
  });
  return out;
}

std::vector<double> pair_counts(const PathSet& paths, const std::vector<std::size_t>& lags, std::size_t from_node) {
  std::vector<double> c;
  for (std::size_t l : lags) c.push_back(static_cast<double>(paths.n_steps - l + 1 - from_node));
  return c;
}

std::size_t window_node(const PathSet& paths, double window_start) {
  if (!(window_start >= 0.0 && window_start < paths.T)) throw config_error("estimate_holder: window start must lie in [0, T)");
  return static_cast<std::size_t>(std::ceil(window_start / paths.step() - 1e-9));
}

}  // namespace

std::vector<std::size_t> default_lags(std::size_t n_steps) {
  std::vector<std::size_t> lags;
  for (std::size_t l = 1; l <= 32 && 4 * l < n_steps; l *= 2) lags.push_back(l);
  return lags;
}

std::vector<double> variogram(const PathSet& paths, const std::vector<std::size_t>& lags, std::size_t from_node) {
  check_lags(paths, lags, from_node);
  const auto sums = per_path_sums(paths, lags, from_node, 1);
  const auto counts = pair_counts(paths, lags, from_node);
  std::vector<double> v(lags.size(), 0.0);
  for (const auto& row : sums)
    for (std::size_t m = 0; m < lags.size(); ++m) v[m] += row[m];
  for (std::size_t m = 0; m < lags.size(); ++m) v[m] /= counts[m] * static_cast<double>(paths.n_paths);
  return v;
}

double loglog_exponent(const std::vector<std::size_t>& lags, const std::vector<double>& v, double step) {
  if (lags.size() != v.size() || lags.size() < 2) throw config_error("loglog_exponent: need at least two lags");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(lags.size());
  for (std::size_t m = 0; m < lags.size(); ++m) {
    if (!(v[m] > 0.0)) throw numerical_error("degenerate variogram: V(" + std::to_string(lags[m]) + ") = 0");
    const double x = std::log(static_cast<double>(lags[m]) * step), y = std::log(v[m]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (sxy - sx * sy / n) / (sxx - sx * sx / n);
  return 0.5 * slope;
}

HolderReport estimate_holder(const PathSet& paths, const EstimateOptions& opts) {
  const std::vector<std::size_t> lags = opts.lags.empty() ? default_lags(paths.n_steps) : opts.lags;
  if (lags.size() < 2) throw config_error("estimate_holder: need at least two lags");
  if (paths.n_paths < opts.min_paths)
    throw config_error("estimate_holder: need at least " + std::to_string(opts.min_paths) + " paths for the confidence band");
  if (opts.resamples < 1) throw config_error("estimate_holder: resamples must be positive");
  if (!(opts.confidence > 0.0 && opts.confidence < 1.0)) throw config_error("estimate_holder: confidence must lie in (0,1)");
  const std::size_t from = window_node(paths, opts.window_start);
  check_lags(paths, lags, from);

  HolderReport rep;
  rep.lags = lags;
  rep.window_start = opts.window_start;
  rep.resamples = opts.resamples;
  rep.seed = opts.seed;
  rep.variogram = variogram(paths, lags, from);
  rep.estimate = loglog_exponent(lags, rep.variogram, paths.step());

  const auto sums = per_path_sums(paths, lags, from, opts.threads);
  const auto counts = pair_counts(paths, lags, from);
  const std::size_t np = paths.n_paths;
  std::vector<double> boot(opts.resamples);
  parallel_for(opts.resamples, opts.threads, [&](std::size_t b) {
    std::mt19937_64 rng(stream_seed(opts.seed, b));
    std::uniform_int_distribution<std::size_t> pick(0, np - 1);
    std::vector<double> v(lags.size(), 0.0);
    for (std::size_t k = 0; k < np; ++k) {
      const auto& row = sums[pick(rng)];
      for (std::size_t m = 0; m < lags.size(); ++m) v[m] += row[m];
    }
    for (std::size_t m = 0; m < lags.size(); ++m) v[m] /= counts[m] * static_cast<double>(np);
    boot[b] = loglog_exponent(lags, v, paths.step());
  });
  std::sort(boot.begin(), boot.end());
  const double tail = 0.5 * (1.0 - opts.confidence);
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(boot.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i);
    return i + 1 < boot.size() ? (1.0 - w) * boot[i] + w * boot[i + 1] : boot[i];
  };
  rep.ci_low = std::min(quantile(tail), rep.estimate);
  rep.ci_high = std::max(quantile(1.0 - tail), rep.estimate);
  return rep;
}

}  // namespace gvp
