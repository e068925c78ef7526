#include "gvp/volterra.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gvp/errors.h"
#include "gvp/specfun.h"

namespace gvp {

double c1_roughness(const GridFunction& f) {
  if (f.left_exponent > 0.0 || f.right_exponent > 0.0) return std::numeric_limits<double>::infinity();
  const double h = f.step();
  double m = 0.0;
  for (std::size_t i = 1; i < f.n; ++i)
    m = std::max(m, std::abs(f.values[i + 1] - 2.0 * f.values[i] + f.values[i - 1]) / h);
  return m;
}

void FirstKindProblem::validate() const {
  FracOrder{alpha};
  y.validate();
  h_repr.validate();
  if (!y.same_grid(h_repr)) throw config_error("h_repr and y must share a grid");
  if (y.t0 != 0.0) throw config_error("first-kind problems start at 0");
  if (!(c1_roughness(y) <= kC1Threshold)) throw config_error("y fails the discrete C1 check");
  if (!(c1_roughness(h_repr) <= kC1Threshold)) throw config_error("h_repr fails the discrete C1 check");
}

SingularKernelSpec FirstKindProblem::g_kernel() const {
  if (g) return *g;
  const double a = alpha;
  const auto pw = GridFunction::sample_regular([a](double) { return 1.0 / gamma(a); }, 0.0, y.t1, y.n, 1.0 - a);
  return SingularKernelSpec::tabulated(pw + rl_integral_lower(h_repr, FracOrder(a)), "g(" + h_source + ")");
}

std::function<double(double)> g_decompose_exp(FracOrder alpha, double beta) {
  const double a = alpha.alpha;
  if (beta == 0.0) return [](double) { return 0.0; };
  return [a, beta](double x) { return a * beta * kummer_1f1(a + 1.0, 2.0, beta * x); };
}

SingularKernelSpec exp_power_kernel(FracOrder alpha, double beta) {
  const double a = alpha.alpha;
  const double ig = 1.0 / gamma(a);
  return SingularKernelSpec::closed_form(
      1.0 - a, [beta, ig](double x) { return std::exp(beta * x) * ig; }, {}, "exp_power");
}

FirstKindProblem exp_power_problem(FracOrder alpha, double beta, double T, std::size_t n) {
  FirstKindProblem p;
  p.alpha = alpha.alpha;
  p.h_repr = GridFunction::sample(g_decompose_exp(alpha, beta), 0.0, T, n);
  p.y = GridFunction::sample([](double) { return 1.0; }, 0.0, T, n);
  p.h_source = "exp(beta=" + std::to_string(beta) + ")";
  p.g = exp_power_kernel(alpha, beta);
  return p;
}

double kummer_relation_residual(FracOrder alpha, double beta, double T, std::size_t n) {
  const double a = alpha.alpha;
  const double ig = 1.0 / gamma(a);
  const auto g0 =
      GridFunction::sample_regular([=](double x) { return std::expm1(beta * x) * ig; }, 0.0, T, n, 1.0 - a);
  const auto lhs = rl_integral_lower(g0, FracOrder(1.0 - a));
  double m = 0.0;
  for (std::size_t i = 0; i <= n; ++i)
    m = std::max(m, std::abs(lhs.values[i] - (kummer_1f1(a, 1.0, beta * lhs.node(i)) - 1.0)));
  return m;
}

namespace {

// int_0^{x_i} F(t) h(x_i - t) dt by composite Simpson (3/8 rule for odd cell counts).
double reconvolve(const std::vector<double>& F, const std::vector<double>& h, std::size_t i, double step) {
  auto p = [&](std::size_t j) { return F[j] * h[i - j]; };
  if (i == 0) return 0.0;
  if (i == 1) return 0.5 * step * (p(0) + p(1));
  if (i == 2) return step / 3.0 * (p(0) + 4.0 * p(1) + p(2));
  double s = 0.0;
  std::size_t simpson_end = i;
  if (i % 2 == 1) {
    simpson_end = i - 3;
    s += 3.0 * step / 8.0 * (p(i - 3) + 3.0 * p(i - 2) + 3.0 * p(i - 1) + p(i));
  }
  if (simpson_end == 0) return s;
  double acc = p(0) + p(simpson_end);
  for (std::size_t j = 1; j < simpson_end; ++j) acc += (j % 2 ? 4.0 : 2.0) * p(j);
  return s + step / 3.0 * acc;
}

}  // namespace

SecondKindSolution solve_second_kind(const GridFunction& y, const GridFunction& h, SecondKindRule rule) {
  y.validate();
  h.validate();
  if (!y.same_grid(h)) throw config_error("solve_second_kind: y and h must share a grid");
  if (h.left_exponent > 0.0 || h.right_exponent > 0.0) throw config_error("solve_second_kind: h must be continuous");
  if (std::all_of(h.values.begin(), h.values.end(), [](double v) { return v == 0.0; })) return {y, 0.0};
  const std::size_t n = y.n;
  const double d = y.step();
  const auto& yv = y.values;
  const auto& hv = h.values;
  std::vector<double> F(n + 1);
  F[0] = yv[0];
  const double diag = rule == SecondKindRule::trapezoid ? 1.0 + 0.5 * d * hv[0] : 1.0;
  if (std::abs(diag) < 1e-14) throw numerical_error("solve_second_kind: implicit diagonal vanishes");
  for (std::size_t i = 1; i <= n; ++i) {
    double s = 0.0;
    for (std::size_t j = 1; j < i; ++j) s += F[j] * hv[i - j];
    if (rule == SecondKindRule::trapezoid) {
      F[i] = (yv[i] - d * (0.5 * F[0] * hv[i] + s)) / diag;
    } else {
      F[i] = yv[i] - d * (F[0] * hv[i] + s);
    }
    if (!std::isfinite(F[i])) throw numerical_error("solve_second_kind: non-finite value at step " + std::to_string(i));
  }
  SecondKindSolution out{GridFunction(y.t0, y.t1, n, F), 0.0};
  for (std::size_t i = 0; i <= n; ++i)
    out.residual = std::max(out.residual, std::abs(F[i] + reconvolve(F, hv, i, d) - yv[i]));
  return out;
}

GridFunction recover_f(const SecondKindSolution& F, FracOrder alpha) {
  if (!(c1_roughness(F.F) <= kC1Threshold)) throw config_error("recover_f: F fails the discrete C1 check");
  return abel_solve(F.F, F.F.values[0], alpha);
}

FirstKindResult solve_first_kind(const FirstKindProblem& problem, SecondKindRule rule) {
  problem.validate();
  FirstKindResult r;
  r.F = solve_second_kind(problem.y, problem.h_repr, rule);
  r.f = recover_f(r.F, FracOrder(problem.alpha));
  const auto back = conv_lower(problem.g_kernel(), r.f);
  r.defect = max_abs_diff(back, problem.y, 1);
  return r;
}

PositivityCertificate positivity_certificate(const FirstKindProblem& problem, const GridFunction& f) {
  PositivityCertificate c;
  const auto& y = problem.y;
  const auto dy = derivative(y);
  const double tol = 1e-12 * std::max(1.0, max_abs(y));
  if (*std::min_element(y.values.begin(), y.values.end()) <= 0.0) c.failed.push_back("y>0");
  if (*std::min_element(dy.values.begin(), dy.values.end()) < -tol) c.failed.push_back("y'>=0");
  if (*std::max_element(problem.h_repr.values.begin(), problem.h_repr.values.end()) >= 0.0) c.failed.push_back("h<0");
  c.hypotheses_hold = c.failed.empty();
  if (!c.hypotheses_hold) return c;
  const auto F = solve_second_kind(y, problem.h_repr);
  const auto dF = derivative(F.F);
  c.min_dF = *std::min_element(dF.values.begin(), dF.values.end());
  c.min_f = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= f.n; ++i) c.min_f = std::min(c.min_f, f.values[i]);
  c.granted = c.min_f > 0.0 && c.min_dF > 0.0;
  return c;
}

}  // namespace gvp
