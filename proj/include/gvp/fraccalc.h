#pragma once

#include <string>
#include <vector>

#include "gvp/grid_function.h"
#include "gvp/singular_kernel.h"

namespace gvp {

struct FracOrder {
  double alpha;
  explicit FracOrder(double a);
};

using Warnings = std::vector<std::string>;

// (k * f)(x) = int_{t0}^x k(x-s) f(s) ds at every node.
GridFunction conv_lower(const SingularKernelSpec& kernel, const GridFunction& f);
// int_x^{t1} k(s-x) f(s) ds
GridFunction conv_upper(const SingularKernelSpec& kernel, const GridFunction& f);

GridFunction rl_integral_lower(const GridFunction& f, FracOrder alpha);
GridFunction rl_integral_upper(const GridFunction& f, FracOrder alpha);
// int_{t0}^x f
GridFunction integrate_lower(const GridFunction& f);

// D^h_{0+} g = int_0^t h(t-s) g'(s) ds + h(t) g0
GridFunction sonine_derivative_lower(const SingularKernelSpec& h, const GridFunction& g, double g0);
// D^h_{T-} g = gT h(T-s) - int_s^T h(t-s) g'(t) dt
GridFunction sonine_derivative_upper(const SingularKernelSpec& h, const GridFunction& g, double gT);

// Solves I^alpha f = g: f = I^{1-alpha}(g') + g_a x^{-alpha} / Gamma(1-alpha).
GridFunction abel_solve(const GridFunction& g, double g_a, FracOrder alpha, Warnings* warnings = nullptr);
// Jump heuristic on I^{1-alpha} g; true when it looks absolutely continuous.
bool abel_ac_check(const GridFunction& g, FracOrder alpha, std::string* reason = nullptr);

// Riemann-sum L^p norm, p = infinity allowed.
double lp_norm(const std::vector<double>& v, double step, double p);
// Full discrete convolution (length f+g-1), scaled by step.
std::vector<double> full_convolution(const std::vector<double>& f, const std::vector<double>& g, double step);

}  // namespace gvp
