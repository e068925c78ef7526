#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gvp/process.h"

namespace gvp {

// Geometric lags 1, 2, 4, ..., 32 kept below n_steps / 4.
std::vector<std::size_t> default_lags(std::size_t n_steps);

// V(l) = mean over paths and nodes i >= from_node of (X_{i+l} - X_i)^2
std::vector<double> variogram(const PathSet& paths, const std::vector<std::size_t>& lags, std::size_t from_node = 0);

// OLS slope of log V against log(l * step), halved.
double loglog_exponent(const std::vector<std::size_t>& lags, const std::vector<double>& v, double step);

struct EstimateOptions {
  std::vector<std::size_t> lags;  // empty: default_lags
  std::size_t resamples = 200;
  std::uint64_t seed = 0;         // bootstrap seed
  std::size_t min_paths = 50;
  double window_start = 0.0;      // use nodes with t >= window_start
  double confidence = 0.95;
  unsigned threads = 0;
};

struct HolderReport {
  double estimate = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  std::vector<std::size_t> lags;
  std::vector<double> variogram;
  double window_start = 0.0;
  std::size_t resamples = 0;
  std::uint64_t seed = 0;
  std::optional<HolderPrediction> predicted;
};

HolderReport estimate_holder(const PathSet& paths, const EstimateOptions& opts = {});

}  // namespace gvp
