#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gvp {

// Samples of f on the uniform grid t0 + i*(t1-t0)/n, i = 0..n.
//
// Endpoint behaviour f ~ (x-t0)^{-left_exponent} and f ~ (t1-x)^{-right_exponent}.
// A positive exponent marks a singular endpoint; that node stores the leading
// coefficient lim (x-t0)^{left_exponent} f(x) instead of a value. A negative
// exponent is a smoothness hint (f vanishes like a power there) and the node
// stores the true value 0.
struct GridFunction {
  double t0 = 0.0;
  double t1 = 1.0;
  std::size_t n = 0;
  std::vector<double> values;
  double left_exponent = 0.0;
  double right_exponent = 0.0;

  GridFunction() = default;
  GridFunction(double t0, double t1, std::size_t n, std::vector<double> values,
               double left_exponent = 0.0, double right_exponent = 0.0);

  double step() const { return (t1 - t0) / static_cast<double>(n); }
  double length() const { return t1 - t0; }
  double node(std::size_t i) const;
  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  void validate() const;
  bool same_grid(const GridFunction& o) const;

  // (x-t0)^{left}(t1-x)^{right} f at every node, endpoints included.
  std::vector<double> regular() const;

  static GridFunction sample(const std::function<double(double)>& f, double t0, double t1, std::size_t n);
  // f = (x-t0)^{-sl} (t1-x)^{-sr} r(x); r must be finite at both ends.
  static GridFunction sample_regular(const std::function<double(double)>& r, double t0, double t1,
                                     std::size_t n, double sl = 0.0, double sr = 0.0);
  static GridFunction from_regular(double t0, double t1, std::size_t n, std::vector<double> r,
                                   double sl, double sr);
  static GridFunction zeros(double t0, double t1, std::size_t n);

  GridFunction reversed() const;
};

// Rounds exponents within 1e-12 of zero to zero.
double clean_exponent(double e);

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(double c, const GridFunction& f);
// Pointwise product; exponents add.
GridFunction operator*(const GridFunction& f, const GridFunction& g);

// f(x) * coef * (x-t0)^e
GridFunction mul_power(const GridFunction& f, double coef, double e);
// f(x) * m(x) for m smooth and finite on the closed interval
GridFunction mul_smooth(const GridFunction& f, const std::function<double(double)>& m);

// Grid derivative: central differences on the regular factor, one-sided second
// order at the ends, endpoint powers differentiated exactly.
GridFunction derivative(const GridFunction& f);

// Max |f_i| over nodes lo..hi (inclusive), skipping singular endpoint coefficients.
double max_abs(const GridFunction& f, std::size_t lo = 0, std::size_t hi = static_cast<std::size_t>(-1));
double max_abs_diff(const GridFunction& f, const GridFunction& g, std::size_t lo = 1,
                    std::size_t hi = static_cast<std::size_t>(-1));

void write_csv(std::ostream& os, const GridFunction& f);
GridFunction read_csv(std::istream& is);
void write_csv_file(const std::string& path, const GridFunction& f);
GridFunction read_csv_file(const std::string& path);

}  // namespace gvp
