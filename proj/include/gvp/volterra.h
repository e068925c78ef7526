#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gvp/fraccalc.h"
#include "gvp/grid_function.h"
#include "gvp/singular_kernel.h"

namespace gvp {

// Solves int_0^x f(t) g(x-t) dt = y(x) where
// g(x) = x^{alpha-1}/Gamma(alpha) + (I^alpha h_repr)(x).
struct FirstKindProblem {
  double alpha = 0.5;
  GridFunction h_repr;  // on the grid of y
  GridFunction y;
  std::string h_source;
  // Exact g when known; otherwise assembled from h_repr.
  std::optional<SingularKernelSpec> g;

  void validate() const;
  SingularKernelSpec g_kernel() const;
};

// max |second difference| / step over the grid
double c1_roughness(const GridFunction& f);
inline constexpr double kC1Threshold = 1e6;

// h_repr for g(x) = e^{beta x} x^{alpha-1} / Gamma(alpha)
std::function<double(double)> g_decompose_exp(FracOrder alpha, double beta);
// g itself as a kernel
SingularKernelSpec exp_power_kernel(FracOrder alpha, double beta);
FirstKindProblem exp_power_problem(FracOrder alpha, double beta, double T, std::size_t n);

// max |I^{1-alpha} g0 - (1F1(alpha;1;beta x) - 1)| on the grid, g0 = x^{alpha-1}(e^{beta x}-1)/Gamma(alpha)
double kummer_relation_residual(FracOrder alpha, double beta, double T, std::size_t n);

enum class SecondKindRule { trapezoid, leftpoint };

struct SecondKindSolution {
  GridFunction F;
  double residual = 0.0;
};

SecondKindSolution solve_second_kind(const GridFunction& y, const GridFunction& h,
                                     SecondKindRule rule = SecondKindRule::trapezoid);
GridFunction recover_f(const SecondKindSolution& F, FracOrder alpha);

struct FirstKindResult {
  GridFunction f;
  SecondKindSolution F;
  double defect = 0.0;  // max |f*g - y| over nodes >= 1
};

FirstKindResult solve_first_kind(const FirstKindProblem& problem, SecondKindRule rule = SecondKindRule::trapezoid);

struct PositivityCertificate {
  bool hypotheses_hold = false;
  std::vector<std::string> failed;  // names of violated hypotheses
  bool granted = false;             // hypotheses hold and f > 0 at nodes >= 1
  double min_f = 0.0;
  double min_dF = 0.0;  // min F' over the grid
};

PositivityCertificate positivity_certificate(const FirstKindProblem& problem, const GridFunction& f);

}  // namespace gvp
