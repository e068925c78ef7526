#pragma once

namespace gvp {

struct SeriesConfig {
  double rel_tol = 1e-15;
  int max_terms = 500;

  void validate() const;
};

inline constexpr double euler_gamma = 0.57721566490153286060651209;
inline constexpr double pi = 3.14159265358979323846264338;

// Gamma function; throws std::domain_error at 0, -1, -2, ...
double gamma(double x);
double log_abs_gamma(double x);
double digamma(double x);

double beta(double a, double b);

// int_0^x t^{a-1} (1-t)^{b-1} dt, a > 0, 0 <= x <= 1 (b > 0 when x > 1/2).
double beta_lower(double x, double a, double b);
// int_x^1 t^{a-1} (1-t)^{b-1} dt for any real a, b > 0, 0 < x <= 1.
double beta_tail(double x, double a, double b);

// Power series of J_nu / I_nu, nu > -1, y >= 0.
double bessel_j(double nu, double y, const SeriesConfig& cfg = {});
double bessel_i(double nu, double y, const SeriesConfig& cfg = {});

// Kummer 1F1(a; b; z). Series for |z| <= 30, integral representation below that
// (requires 0 < a < b there).
double kummer_1f1(double a, double b, double z, const SeriesConfig& cfg = {});
double kummer_1f1_series(double a, double b, double z, const SeriesConfig& cfg = {});
double kummer_1f1_integral(double a, double b, double z);

}  // namespace gvp
