#pragma once

#include <array>
#include <cstddef>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace gvp::quad {

// Integrates f(dl, dr) over [a, b], where dl = x - a and dr = b - x are passed
// exactly, so endpoint singularities like dl^{-0.9} keep full precision.
template <class F>
double endpoints(F f, double a, double b, double tol = 1e-13) {
  const double len = b - a;
  if (len <= 0.0) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
  auto g = [&](double, double xc) {
    double dl, dr;
    if (xc < 0.0) {
      dl = -xc;
      dr = len - dl;
    } else {
      dr = xc;
      dl = len - dr;
    }
    if (dl <= 0.0 || dr <= 0.0) return 0.0;
    return f(dl, dr);
  };
  return ts.integrate(g, a, b, tol);
}

// Gauss-Legendre rule mapped to [0, 1].
template <std::size_t N>
struct Gauss01 {
  std::array<double, N> x{}, w{};
  Gauss01() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    std::size_t k = 0;
    for (std::size_t i = 0; i < ab.size(); ++i) {
      if (ab[i] == 0.0) {
        x[k] = 0.5;
        w[k++] = 0.5 * wt[i];
        continue;
      }
      x[k] = 0.5 * (1.0 - ab[i]);
      w[k++] = 0.5 * wt[i];
      x[k] = 0.5 * (1.0 + ab[i]);
      w[k++] = 0.5 * wt[i];
    }
  }
};

template <std::size_t N>
const Gauss01<N>& gauss01() {
  static const Gauss01<N> g;
  return g;
}

}  // namespace gvp::quad
