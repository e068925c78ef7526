#pragma once

#include <cstddef>
#include <vector>

namespace gvp::product {

// Cell moments for the weight u^{-sf} (i-u)^{-sk} in grid units, cells j = 0..i-1:
//   m0[j] = int_j^{j+1} w(u) du,   m1[j] = int_j^{j+1} (u-j) w(u) du.
// Exact for any sf, sk < 1 (pure-power weights are integrated in closed form).
class CellMoments {
 public:
  CellMoments(double sf, double sk);
  void at(std::size_t i, std::vector<double>& m0, std::vector<double>& m1) const;
  double sf() const { return sf_; }
  double sk() const { return sk_; }

 private:
  void grow(std::size_t i) const;
  double sf_, sk_;
  mutable std::vector<double> t0_, t1_;  // shift-invariant tables when one exponent is 0
};

// out[i] = step^{1-sf-sk} sum_{j<i} [P_j m0 + (P_{j+1}-P_j) m1],  P_j = fr[j] * kr[i-j],
// for i = 1..n (out[0] is left to the caller).
std::vector<double> convolve(double step, const std::vector<double>& fr, double sf, const std::vector<double>& kr,
                             double sk, std::size_t n);

// Single node i of the same sum.
double convolve_at(double step, const std::vector<double>& fr, double sf, const std::vector<double>& kr, double sk,
                   std::size_t i);

}  // namespace gvp::product
