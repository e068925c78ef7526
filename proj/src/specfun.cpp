#include "gvp/specfun.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

#include "gvp/errors.h"
#include "gvp/quadrature.h"

namespace gvp {

void SeriesConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw config_error("SeriesConfig: rel_tol must lie in (0,1)");
  if (max_terms < 1) throw config_error("SeriesConfig: max_terms must be >= 1");
}

namespace {

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double gamma(double x) {
  if (is_pole(x)) throw std::domain_error("gamma: pole at " + std::to_string(x));
  return std::tgamma(x);
}

double log_abs_gamma(double x) {
  if (is_pole(x)) throw std::domain_error("log_abs_gamma: pole at " + std::to_string(x));
  return std::lgamma(x);
}

double digamma(double x) {
  if (is_pole(x)) throw std::domain_error("digamma: pole at " + std::to_string(x));
  return boost::math::digamma(x);
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta: arguments must be positive");
  if (a + b < 150.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace {

// x^a * sum_k (1-b)_k/k! x^k/(a+k), valid for 0 <= x <= 1/2, a > 0.
double beta_lower_series(double x, double a, double b) {
  if (x == 0.0) return 0.0;
  double term = 1.0;
  double sum = 1.0 / a;
  for (int k = 0; k < 2000; ++k) {
    term *= (k + 1.0 - b) / (k + 1.0) * x;
    const double add = term / (a + k + 1.0);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) return std::pow(x, a) * sum;
  }
  throw convergence_error("beta_lower: series did not converge");
}

}  // namespace

double beta_lower(double x, double a, double b) {
  if (!(a > 0.0)) throw std::domain_error("beta_lower: a must be positive");
  if (x < 0.0 || x > 1.0) throw std::domain_error("beta_lower: x outside [0,1]");
  if (x <= 0.5) return beta_lower_series(x, a, b);
  if (!(b > 0.0)) throw std::domain_error("beta_lower: b must be positive for x > 1/2");
  return beta(a, b) - beta_lower_series(1.0 - x, b, a);
}

double beta_tail(double x, double a, double b) {
  if (!(b > 0.0)) throw std::domain_error("beta_tail: b must be positive");
  if (!(x > 0.0) || x > 1.0) throw std::domain_error("beta_tail: x outside (0,1]");
  if (x >= 0.5) return beta_lower_series(1.0 - x, b, a);
  // [1/2, 1] piece plus term-wise integration of (1-y)^{b-1} over [x, 1/2]
  double sum = beta_lower_series(0.5, b, a);
  double coef = 1.0;
  const double lx = std::log(x), lh = std::log(0.5);
  double ph = std::exp(a * lh), px = std::exp(a * lx);  // 0.5^{a+k}, x^{a+k}
  for (int k = 0; k < 2000; ++k) {
    if (k > 0) {
      coef *= (k - b) / k;
      ph *= 0.5;
      px *= x;
    }
    const double e = a + k;
    const double piece = std::abs(e) < 1e-13 ? lh - lx : (ph - px) / e;
    const double add = coef * piece;
    sum += add;
    if (k > 2 && std::abs(add) <= 1e-17 * std::abs(sum) && std::abs(coef) * ph <= 1e-17 * std::abs(sum))
      return sum;
  }
  throw convergence_error("beta_tail: series did not converge");
}

namespace {

template <int Sign>
double bessel_series(double nu, double y, const SeriesConfig& cfg, const char* name) {
  cfg.validate();
  if (!(nu > -1.0)) throw std::domain_error(std::string(name) + ": order must exceed -1");
  if (y < 0.0) throw std::domain_error(std::string(name) + ": argument must be >= 0");
  if (y == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const long double half = 0.5L * y;
  const long double q = Sign * half * half;
  long double term = std::pow(half, static_cast<long double>(nu)) / std::tgamma(nu + 1.0);
  long double sum = term;
  int small = 0;
  for (int k = 1; k <= cfg.max_terms; ++k) {
    term *= q / (static_cast<long double>(k) * (nu + k));
    sum += term;
    if (std::abs(term) < cfg.rel_tol * std::abs(sum)) {
      if (++small == 2) return static_cast<double>(sum);
    } else {
      small = 0;
    }
  }
  throw convergence_error(std::string(name) + ": max_terms exceeded");
}

}  // namespace

double bessel_j(double nu, double y, const SeriesConfig& cfg) {
  return bessel_series<-1>(nu, y, cfg, "bessel_j");
}

double bessel_i(double nu, double y, const SeriesConfig& cfg) {
  return bessel_series<1>(nu, y, cfg, "bessel_i");
}

double kummer_1f1_series(double a, double b, double z, const SeriesConfig& cfg) {
  cfg.validate();
  if (b <= 0.0 && b == std::floor(b)) throw std::domain_error("kummer_1f1: b is a non-positive integer");
  if (z < 0.0) return std::exp(z) * kummer_1f1_series(b - a, b, -z, cfg);
  long double term = 1.0L, sum = 1.0L;
  int small = 0;
  for (int k = 0; k < cfg.max_terms; ++k) {
    term *= (a + k) * static_cast<long double>(z) / ((b + k) * (k + 1.0L));
    sum += term;
    if (std::abs(term) < cfg.rel_tol * std::abs(sum)) {
      if (++small == 2) return static_cast<double>(sum);
    } else {
      small = 0;
    }
  }
  throw convergence_error("kummer_1f1: max_terms exceeded");
}

double kummer_1f1_integral(double a, double b, double z) {
  if (!(a > 0.0 && a < b)) throw std::domain_error("kummer_1f1_integral: needs 0 < a < b");
  const double am1 = a - 1.0, cm1 = b - a - 1.0;
  const double v = quad::endpoints(
      [&](double t, double tc) { return std::exp(z * t) * std::pow(t, am1) * std::pow(tc, cm1); }, 0.0, 1.0);
  return v / beta(a, b - a);
}

double kummer_1f1(double a, double b, double z, const SeriesConfig& cfg) {
  if (std::abs(z) > 30.0 && a > 0.0 && a < b) return kummer_1f1_integral(a, b, z);
  return kummer_1f1_series(a, b, z, cfg);
}

}  // namespace gvp
