#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gvp/fraccalc.h"
#include "gvp/singular_kernel.h"

namespace gvp {

enum class PairKind { power, log, bessel, coshcos, exp_power, tabulated };
std::string to_string(PairKind k);

// c * h == 1 on (0, T]
struct SoninePair {
  SingularKernelSpec c;
  SingularKernelSpec h;
  double T = 1.0;
  PairKind kind = PairKind::tabulated;
  std::map<std::string, double> params;
  Warnings warnings;

  std::string name() const;
};

SoninePair power_pair(double alpha, double T = 1.0);
SoninePair log_pair(double alpha, double A, double T = 1.0);
SoninePair bessel_pair(double nu, double T = 1.0);
SoninePair coshcos_pair(double T = 1.0);
SoninePair exp_power_pair(double alpha, double beta, double T, std::size_t n);

// Regular part of the log-pair partner: int_0^inf x^t e^{l t} / Gamma(1-alpha+t) dt.
double log_pair_h_regular(double alpha, double l, double x, double T);

struct IdentityReport {
  std::string pair;
  std::size_t n = 0;
  double max_deviation = 0.0;
  std::size_t nodes_checked = 0;
};

// max over nodes i >= 1 of |(c*h)(t_i) - 1| on [0, T] with n cells
IdentityReport verify_identity(const SoninePair& pair, std::size_t n);

struct RemarkReport {
  double gamma_ = 0.0;
  double nu = 0.0;
  // Both sides are ~ x^{-s} at 0; residuals compare x^s * side, node 0 holding the limit.
  double exponent_first = 0.0;
  double exponent_second = 0.0;
  std::vector<double> x;
  std::vector<double> lhs_first, rhs_first, lhs_second, rhs_second;  // x^s * side
  double residual_first = 0.0;
  double residual_second = 0.0;
};

// 4 sqrt(pi)/Gamma(g+1) int_0^x s^{nu/2} J_nu(2 sqrt s)(x-s)^g ds = cos(2 sqrt x)/sqrt x
// pi^{-1/2}/Gamma(g+1) int_0^x t^{-1/2} cosh(2 sqrt t)(x-t)^g dt = x^{(-nu-1)/2} I_{-nu-1}(2 sqrt x)
// on [0, X] with n cells. lhs_scale multiplies the first left side (1 for the stated identity).
RemarkReport remark_identities_check(double gamma_, double nu, double X, std::size_t n, double lhs_scale = 1.0);

}  // namespace gvp
