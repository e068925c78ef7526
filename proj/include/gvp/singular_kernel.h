#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gvp/grid_function.h"

namespace gvp {

// k(x) = x^{-exponent} * r(x) on (0, T], r finite at 0.
struct SingularKernelSpec {
  enum class Kind { power, tabulated, closed_form };

  Kind kind = Kind::power;
  double alpha = 1.0;  // power: k(x) = scale * x^{alpha-1}
  double scale = 1.0;
  double exponent = 0.0;
  std::function<double(double)> regular;  // closed_form: r(x)
  // Optional exact int_0^step k(x) dx; fixes r(0) when r is unbounded (log terms)
  // or not continuous at 0.
  std::function<double(double)> first_cell;
  std::shared_ptr<const GridFunction> table;
  std::string label;

  static SingularKernelSpec power(double alpha, double scale = 1.0);
  static SingularKernelSpec closed_form(double exponent, std::function<double(double)> regular,
                                        std::function<double(double)> first_cell = {}, std::string label = {});
  static SingularKernelSpec tabulated(GridFunction table, std::string label = {});

  void validate() const;
  double operator()(double x) const;
  // r(m*step), m = 0..count-1
  std::vector<double> regular_samples(double step, std::size_t count) const;
  // k on the grid of `like` (node 0 holds the singular coefficient when exponent > 0)
  GridFunction on_grid(double t0, double t1, std::size_t n) const;
  SingularKernelSpec scaled(double c) const;
};

}  // namespace gvp
