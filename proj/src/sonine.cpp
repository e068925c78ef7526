#include "gvp/sonine.h"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gvp/errors.h"
#include "gvp/specfun.h"
#include "gvp/volterra.h"

namespace gvp {

std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::power: return "power";
    case PairKind::log: return "log";
    case PairKind::bessel: return "bessel";
    case PairKind::coshcos: return "coshcos";
    case PairKind::exp_power: return "exp_power";
    case PairKind::tabulated: return "tabulated";
  }
  return "unknown";
}

std::string SoninePair::name() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind) << '(';
  bool first = true;
  for (const auto& [k, v] : params) {
    os << (first ? "" : ",") << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

SoninePair power_pair(double alpha, double T) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("power_pair: alpha must lie in (0,1)");
  if (!(T > 0.0)) throw config_error("power_pair: T must be positive");
  SoninePair p;
  p.c = SingularKernelSpec::power(1.0 - alpha);
  p.h = SingularKernelSpec::power(alpha, std::sin(pi * alpha) / pi);
  p.c.label = "power_c";
  p.h.label = "power_h";
  p.T = T;
  p.kind = PairKind::power;
  p.params = {{"alpha", alpha}};
  if (alpha >= 0.5) p.warnings.push_back("power_pair: alpha >= 1/2 lies outside the stated range (0,1/2); identity still holds");
  return p;
}

namespace {

// Largest t with integrand bound e^{t(log_x + l)}/Gamma(c0 + t) above 1e-16 of its peak.
double log_pair_cutoff(double c0, double slope) {
  double peak = -INFINITY, t = 0.0;
  for (; t <= 400.0; t += 0.25) {
    const double lb = t * slope - std::lgamma(c0 + t);
    peak = std::max(peak, lb);
    if (t > 1.0 && lb < peak + std::log(1e-16) && slope - std::log(c0 + t) < 0.0) return t;
  }
  throw convergence_error("log_pair: tail truncation failed within the quadrature budget");
}

double log_pair_integral(double c0, double logx, double l, double tmax) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0.0;
  const double v = GK::integrate([&](double t) { return std::exp(t * (logx + l) - std::lgamma(c0 + t)); }, 0.0,
                                 tmax, 20, 1e-13, &err);
  if (!(err <= 1e-9 * std::max(1.0, std::abs(v)))) throw convergence_error("log_pair: quadrature did not converge");
  return v;
}

}  // namespace

double log_pair_h_regular(double alpha, double l, double x, double T) {
  if (x <= 0.0) return 0.0;
  const double tmax = log_pair_cutoff(1.0 - alpha, std::max(std::log(T), 0.0) + l);
  return log_pair_integral(1.0 - alpha, std::log(x), l, tmax);
}

SoninePair log_pair(double alpha, double A, double T) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("log_pair: alpha must lie in (0,1)");
  if (!(T > 0.0)) throw config_error("log_pair: T must be positive");
  const double l = digamma(alpha) - A;
  const double ig = 1.0 / gamma(alpha);
  SoninePair p;
  // c = x^{alpha-1}(ln(1/x) + A)/Gamma(alpha)
  p.c = SingularKernelSpec::closed_form(
      1.0 - alpha, [=](double x) { return (A - std::log(x)) * ig; },
      [=](double d) {
        const double da = std::pow(d, alpha);
        return ig * (da * (-std::log(d) / alpha + 1.0 / (alpha * alpha)) + A * da / alpha);
      },
      "log_c");
  // h = x^{-alpha} int_0^inf x^t e^{lt}/Gamma(1-alpha+t) dt
  const double tmax = log_pair_cutoff(1.0 - alpha, std::max(std::log(T), 0.0) + l);
  const double tmax1 = log_pair_cutoff(2.0 - alpha, std::max(std::log(T), 0.0) + l);
  p.h = SingularKernelSpec::closed_form(
      alpha, [=](double x) { return x > 0.0 ? log_pair_integral(1.0 - alpha, std::log(x), l, tmax) : 0.0; },
      [=](double d) { return std::pow(d, 1.0 - alpha) * log_pair_integral(2.0 - alpha, std::log(d), l, tmax1); },
      "log_h");
  p.T = T;
  p.kind = PairKind::log;
  p.params = {{"alpha", alpha}, {"A", A}, {"l", l}, {"t_trunc", tmax}};
  return p;
}

SoninePair bessel_pair(double nu, double T) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("bessel_pair: nu must lie in (0,1)");
  if (!(T > 0.0)) throw config_error("bessel_pair: T must be positive");
  SoninePair p;
  // c = x^{(nu-1)/2} I_{nu-1}(2 sqrt x) = x^{nu-1} r_c(x)
  const double c0 = 1.0 / gamma(nu), h0 = 1.0 / gamma(1.0 - nu);
  p.c = SingularKernelSpec::closed_form(
      1.0 - nu,
      [=](double x) { return x > 0.0 ? std::pow(x, 0.5 * (1.0 - nu)) * bessel_i(nu - 1.0, 2.0 * std::sqrt(x)) : c0; },
      {}, "bessel_c");
  // h = x^{-nu/2} J_{-nu}(2 sqrt x) = x^{-nu} r_h(x)
  p.h = SingularKernelSpec::closed_form(
      nu, [=](double x) { return x > 0.0 ? std::pow(x, 0.5 * nu) * bessel_j(-nu, 2.0 * std::sqrt(x)) : h0; }, {},
      "bessel_h");
  p.T = T;
  p.kind = PairKind::bessel;
  p.params = {{"nu", nu}};
  return p;
}

SoninePair coshcos_pair(double T) {
  if (!(T > 0.0)) throw config_error("coshcos_pair: T must be positive");
  const double s = 1.0 / std::sqrt(pi);
  SoninePair p;
  p.c = SingularKernelSpec::closed_form(0.5, [s](double x) { return s * std::cosh(2.0 * std::sqrt(x)); }, {}, "cosh");
  p.h = SingularKernelSpec::closed_form(0.5, [s](double x) { return s * std::cos(2.0 * std::sqrt(x)); }, {}, "cos");
  p.T = T;
  p.kind = PairKind::coshcos;
  return p;
}

SoninePair exp_power_pair(double alpha, double beta, double T, std::size_t n) {
  const FracOrder a(alpha);
  if (!(beta <= 0.0)) throw std::domain_error("exp_power_pair: beta must be <= 0");
  if (!(T > 0.0)) throw config_error("exp_power_pair: T must be positive");
  const auto problem = exp_power_problem(a, beta, T, n);
  const auto sol = solve_first_kind(problem);
  SoninePair p;
  p.c = exp_power_kernel(a, beta);
  p.h = SingularKernelSpec::tabulated(sol.f, "exp_power_h");
  p.T = T;
  p.kind = PairKind::exp_power;
  p.params = {{"alpha", alpha}, {"beta", beta}, {"n", static_cast<double>(n)}, {"defect", sol.defect},
              {"second_kind_residual", sol.F.residual}};
  return p;
}

IdentityReport verify_identity(const SoninePair& pair, std::size_t n) {
  if (n < 1) throw config_error("verify_identity: n must be >= 1");
  const auto conv = conv_lower(pair.c, pair.h.on_grid(0.0, pair.T, n));
  IdentityReport r{pair.name(), n, 0.0, n};
  for (std::size_t i = 1; i <= n; ++i) r.max_deviation = std::max(r.max_deviation, std::abs(conv.values[i] - 1.0));
  return r;
}

RemarkReport remark_identities_check(double gamma_, double nu, double X, std::size_t n, double lhs_scale) {
  if (std::abs(gamma_ + nu + 1.5) > 1e-12) throw std::domain_error("remark identities need gamma + nu = -3/2");
  if (!(gamma_ > -1.0 && gamma_ < -0.5)) throw std::domain_error("remark identities need gamma in (-1,-1/2)");
  if (!(nu > -1.0 && nu < -0.5)) throw std::domain_error("remark identities need nu in (-1,-1/2)");
  if (!(X > 0.0) || n < 2) throw config_error("remark identities: need X > 0 and n >= 2");
  const auto kern = SingularKernelSpec::power(gamma_ + 1.0);  // (x-s)^gamma
  const double ig = 1.0 / gamma(gamma_ + 1.0);

  // s^{nu/2} J_nu(2 sqrt s) = s^{nu} * r(s), r(0) = 1/Gamma(nu+1)
  const auto f1 = GridFunction::sample_regular(
      [nu](double s) { return s > 0.0 ? std::pow(s, -0.5 * nu) * bessel_j(nu, 2.0 * std::sqrt(s)) : 1.0 / gamma(nu + 1.0); },
      0.0, X, n, -nu);
  const auto l1 = (lhs_scale * 4.0 * std::sqrt(pi) * ig) * conv_lower(kern, f1);
  // t^{-1/2} cosh(2 sqrt t)
  const auto f2 = GridFunction::sample_regular([](double t) { return std::cosh(2.0 * std::sqrt(t)); }, 0.0, X, n, 0.5);
  const auto l2 = (ig / std::sqrt(pi)) * conv_lower(kern, f2);

  RemarkReport r;
  r.gamma_ = gamma_;
  r.nu = nu;
  r.exponent_first = l1.left_exponent;
  r.exponent_second = l2.left_exponent;
  const auto rl1 = l1.regular(), rl2 = l2.regular();
  const double m = -nu - 1.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = l1.node(i);
    // x^{1/2} * cos(2 sqrt x)/sqrt x
    const double rhs1 = std::cos(2.0 * std::sqrt(x));
    // x^{s2} x^{m/2} I_m(2 sqrt x) -> x^{m} sum x^k/(k! Gamma(m+k+1)) times x^{s2}, s2 = -m
    const double rhs2 = x > 0.0 ? std::pow(x, r.exponent_second + 0.5 * m) * bessel_i(m, 2.0 * std::sqrt(x))
                                : 1.0 / gamma(m + 1.0);
    r.x.push_back(x);
    r.lhs_first.push_back(rl1[i]);
    r.rhs_first.push_back(rhs1);
    r.lhs_second.push_back(rl2[i]);
    r.rhs_second.push_back(rhs2);
    r.residual_first = std::max(r.residual_first, std::abs(rl1[i] - rhs1));
    r.residual_second = std::max(r.residual_second, std::abs(rl2[i] - rhs2));
  }
  return r;
}

}  // namespace gvp
