#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gvp/grid_function.h"

namespace gvp {

struct BatteryThresholds {
  double semigroup_c = 0.05;     // times 1/n
  double reflection = 1e-12;
  double ibp = 2e-3;             // relative to max|f| max|g|
  double norm_slack = 1e-12;     // relative slack for exact discrete inequalities
  double abel_c = 1.0;           // times n^{-min(alpha, 1-alpha)}
};

struct BatteryItem {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct BatteryReport {
  double alpha = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<BatteryItem> items;
  bool all_pass = false;
};

// A few random Fourier modes sampled on [0, 1].
GridFunction random_smooth(std::mt19937_64& rng, std::size_t n);

// Semigroup, reflection, integration by parts, Young, non-conjugate Hoelder,
// embedding and Abel round trip at order alpha on n cells.
BatteryReport frac_battery(double alpha, std::size_t n, std::uint64_t seed, const BatteryThresholds& th = {});

}  // namespace gvp
