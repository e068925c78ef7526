#include "gvp/fraccalc.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gvp/errors.h"
#include "gvp/product.h"
#include "gvp/specfun.h"

namespace gvp {

FracOrder::FracOrder(double a) : alpha(a) {
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("fractional order must lie in (0,1)");
}

namespace {

// s^{sl} f(s) at each node, without the right-end factor.
std::vector<double> left_regular(const GridFunction& f) {
  const std::size_t n = f.n;
  const double sl = f.left_exponent;
  std::vector<double> r(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = f.node(i) - f.t0;
    r[i] = sl != 0.0 ? f.values[i] * std::pow(x, sl) : f.values[i];
  }
  if (f.right_exponent > 0.0) r[n] = std::numeric_limits<double>::quiet_NaN();
  if (sl < 0.0)
    r[0] = n >= 3 ? 3.0 * r[1] - 3.0 * r[2] + r[3] : r[1];
  else
    r[0] = f.values[0];
  return r;
}

}  // namespace

GridFunction conv_lower(const SingularKernelSpec& kernel, const GridFunction& f) {
  f.validate();
  kernel.validate();
  const std::size_t n = f.n;
  const double step = f.step();
  const double sf = f.left_exponent, sk = kernel.exponent;
  if (!(sf < 1.0)) throw std::domain_error("conv_lower: function not integrable at the left end");
  const auto kr = kernel.regular_samples(step, n + 1);
  const auto fr = left_regular(f);
  auto out = product::convolve(step, fr, sf, kr, sk, n);
  if (f.right_exponent > 0.0) {
    if (!(sk + f.right_exponent < 1.0))
      throw std::domain_error("conv_lower: kernel and right-end singularity combine to a non-integrable one");
    out[n] = product::convolve_at(step, f.regular(), sf, kr, sk + f.right_exponent, n);
  }
  const double sout = clean_exponent(sf + sk - 1.0);
  out[0] = sout < 0.0 ? 0.0 : beta(1.0 - sf, 1.0 - sk) * fr[0] * kr[0];
  return GridFunction(f.t0, f.t1, n, std::move(out), sout, 0.0);
}

GridFunction conv_upper(const SingularKernelSpec& kernel, const GridFunction& f) {
  return conv_lower(kernel, f.reversed()).reversed();
}

GridFunction rl_integral_lower(const GridFunction& f, FracOrder alpha) {
  return conv_lower(SingularKernelSpec::power(alpha.alpha, 1.0 / gamma(alpha.alpha)), f);
}

GridFunction rl_integral_upper(const GridFunction& f, FracOrder alpha) {
  return rl_integral_lower(f.reversed(), alpha).reversed();
}

GridFunction integrate_lower(const GridFunction& f) { return conv_lower(SingularKernelSpec::power(1.0), f); }

GridFunction sonine_derivative_lower(const SingularKernelSpec& h, const GridFunction& g, double g0) {
  if (g.left_exponent > 0.0) throw std::domain_error("sonine_derivative: g is singular at the left end (not AC)");
  const GridFunction dg = derivative(g);
  GridFunction out = conv_lower(h, dg);
  if (g0 != 0.0) out = out + g0 * h.on_grid(g.t0, g.t1, g.n);
  return out;
}

GridFunction sonine_derivative_upper(const SingularKernelSpec& h, const GridFunction& g, double gT) {
  return sonine_derivative_lower(h, g.reversed(), gT).reversed();
}

bool abel_ac_check(const GridFunction& g, FracOrder alpha, std::string* reason) {
  const GridFunction H = rl_integral_lower(g, FracOrder(1.0 - alpha.alpha));
  const std::size_t n = H.n;
  if (n < 8) return true;
  double tv = 0.0, jump = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = std::abs(H.values[i + 1] - H.values[i]);
    tv += d;
    if (d > jump) {
      jump = d;
      at = i;
    }
  }
  if (tv > 0.0 && jump >= 0.25 * tv) {
    if (reason)
      *reason = "I^{1-alpha} g jumps by " + std::to_string(jump) + " across cell " + std::to_string(at) +
                " (over a quarter of its total variation); g may admit no L1 solution";
    return false;
  }
  return true;
}

GridFunction abel_solve(const GridFunction& g, double g_a, FracOrder alpha, Warnings* warnings) {
  std::string why;
  if (!abel_ac_check(g, alpha, &why) && warnings) warnings->push_back(why);
  const double a = alpha.alpha;
  GridFunction f = rl_integral_lower(derivative(g), FracOrder(1.0 - a));
  if (g_a != 0.0) {
    const double c = g_a / gamma(1.0 - a);
    f = f + GridFunction::sample_regular([c](double) { return c; }, g.t0, g.t1, g.n, a, 0.0);
  }
  return f;
}

double lp_norm(const std::vector<double>& v, double step, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (!(p > 0.0)) throw std::domain_error("lp_norm: p must be positive");
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(step * s, 1.0 / p);
}

std::vector<double> full_convolution(const std::vector<double>& f, const std::vector<double>& g, double step) {
  if (f.empty() || g.empty()) return {};
  std::vector<double> out(f.size() + g.size() - 1, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  for (double& x : out) x *= step;
  return out;
}

}  // namespace gvp
