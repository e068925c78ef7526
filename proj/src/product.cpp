#include "gvp/product.h"

#include <cmath>

#include "gvp/errors.h"
#include "gvp/specfun.h"

namespace gvp::product {

namespace {

// int_0^1 (m+1-tau)^{-s} {1, tau} dtau
void near_right(std::size_t m, double s, double& a0, double& a1) {
  if (m == 0) {
    a0 = 1.0 / (1.0 - s);
    a1 = 1.0 / ((1.0 - s) * (2.0 - s));
    return;
  }
  const double base = static_cast<double>(m) + 1.0;
  const double rho = 1.0 / base;
  double c = 1.0, p = 1.0, s0 = 0.0, s1 = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double t0 = c * p / (k + 1.0), t1 = c * p / (k + 2.0);
    s0 += t0;
    s1 += t1;
    if (std::abs(t0) < 1e-18 * std::abs(s0) && k > 1) break;
    c *= (s + k) / (k + 1.0);
    p *= rho;
  }
  const double scale = std::pow(base, -s);
  a0 = scale * s0;
  a1 = scale * s1;
}

// int_0^1 (j+tau)^{-s} {1, tau} dtau
void near_left(std::size_t j, double s, double& b0, double& b1) {
  if (j == 0) {
    b0 = 1.0 / (1.0 - s);
    b1 = 1.0 / (2.0 - s);
    return;
  }
  const double base = static_cast<double>(j) + 1.0;
  const double rho = 1.0 / base;
  double c = 1.0, p = 1.0, s0 = 0.0, s1 = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double t0 = c * p / (k + 1.0), t1 = c * p / ((k + 1.0) * (k + 2.0));
    s0 += t0;
    s1 += t1;
    if (std::abs(t0) < 1e-18 * std::abs(s0) && k > 1) break;
    c *= (s + k) / (k + 1.0);
    p *= rho;
  }
  const double scale = std::pow(base, -s);
  b0 = scale * s0;
  b1 = scale * s1;
}

}  // namespace

CellMoments::CellMoments(double sf, double sk) : sf_(sf), sk_(sk) {
  if (!(sf < 1.0) || !(sk < 1.0)) throw std::domain_error("product integration: singular exponent must be < 1");
}

void CellMoments::grow(std::size_t i) const {
  std::size_t have = t0_.size();
  if (have >= i) return;
  t0_.resize(i);
  t1_.resize(i);
  for (std::size_t m = have; m < i; ++m) {
    if (sf_ == 0.0)
      near_right(m, sk_, t0_[m], t1_[m]);
    else
      near_left(m, sf_, t0_[m], t1_[m]);
  }
}

void CellMoments::at(std::size_t i, std::vector<double>& m0, std::vector<double>& m1) const {
  m0.resize(i);
  m1.resize(i);
  if (sf_ == 0.0 && sk_ == 0.0) {
    for (std::size_t j = 0; j < i; ++j) {
      m0[j] = 1.0;
      m1[j] = 0.5;
    }
    return;
  }
  if (sf_ == 0.0) {
    grow(i);
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t m = i - 1 - j;
      m0[j] = t0_[m];
      m1[j] = t1_[m];
    }
    return;
  }
  if (sk_ == 0.0) {
    grow(i);
    for (std::size_t j = 0; j < i; ++j) {
      m0[j] = t0_[j];
      m1[j] = t1_[j];
    }
    return;
  }
  const double a = 1.0 - sf_, b = 1.0 - sk_;
  const double di = static_cast<double>(i);
  const double scale = std::pow(di, a + b - 1.0);
  double prev0 = 0.0, prev1 = 0.0;
  for (std::size_t j = 0; j < i; ++j) {
    const double x1 = j + 1 == i ? 1.0 : static_cast<double>(j + 1) / di;
    const double xj = static_cast<double>(j) / di;
    const double b0 = j + 1 == i ? beta(a, b) : beta_lower(x1, a, b);
    const double b1 = j + 1 == i ? beta(a + 1.0, b) : beta_lower(x1, a + 1.0, b);
    const double M0 = b0 - prev0, M1 = b1 - prev1;
    m0[j] = scale * M0;
    m1[j] = scale * di * (M1 - xj * M0);
    prev0 = b0;
    prev1 = b1;
  }
}

double convolve_at(double step, const std::vector<double>& fr, double sf, const std::vector<double>& kr, double sk,
                   std::size_t i) {
  CellMoments cm(sf, sk);
  std::vector<double> m0, m1;
  cm.at(i, m0, m1);
  double acc = 0.0;
  for (std::size_t j = 0; j < i; ++j) {
    const double p0 = fr[j] * kr[i - j], p1 = fr[j + 1] * kr[i - j - 1];
    acc += p0 * m0[j] + (p1 - p0) * m1[j];
  }
  return std::pow(step, 1.0 - sf - sk) * acc;
}

std::vector<double> convolve(double step, const std::vector<double>& fr, double sf, const std::vector<double>& kr,
                             double sk, std::size_t n) {
  if (fr.size() < n + 1 || kr.size() < n + 1) throw config_error("convolve: sample vectors too short");
  CellMoments cm(sf, sk);
  std::vector<double> out(n + 1, 0.0), m0, m1;
  const double scale = std::pow(step, 1.0 - sf - sk);
  for (std::size_t i = 1; i <= n; ++i) {
    cm.at(i, m0, m1);
    double acc = 0.0;
    const double* k = kr.data() + i;
    for (std::size_t j = 0; j < i; ++j) {
      const double p0 = fr[j] * k[-static_cast<std::ptrdiff_t>(j)];
      const double p1 = fr[j + 1] * k[-static_cast<std::ptrdiff_t>(j) - 1];
      acc += p0 * m0[j] + (p1 - p0) * m1[j];
    }
    out[i] = scale * acc;
  }
  return out;
}

}  // namespace gvp::product
