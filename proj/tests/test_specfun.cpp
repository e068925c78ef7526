#include <cmath>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "doctest.h"
#include "gvp/errors.h"
#include "gvp/quadrature.h"
#include "gvp/specfun.h"

using namespace gvp;
using doctest::Approx;

TEST_CASE("gamma: classical values and poles") {
  CHECK(gvp::gamma(1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(gvp::gamma(0.5) == Approx(1.7724538509055160).epsilon(1e-14));
  CHECK(gvp::gamma(5.0) == Approx(24.0).epsilon(1e-14));
  CHECK_THROWS_AS(gvp::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(gvp::gamma(-2.0), std::domain_error);
}

TEST_CASE("gamma: recurrence and accuracy on (0,30]") {
  for (double x = 0.05; x <= 10.0; x += 0.0731)
    CHECK(std::abs(gvp::gamma(x + 1.0) - x * gvp::gamma(x)) <= 1e-13 * std::abs(x * gvp::gamma(x)));
  for (double x = 0.1; x <= 30.0; x += 0.37)
    CHECK(std::abs(gvp::gamma(x) / boost::math::tgamma(x) - 1.0) <= 1e-12);
}

TEST_CASE("beta: reflection oracle and quadrature cross-check") {
  CHECK(beta(1.0, 1.0) == Approx(1.0));
  CHECK(beta(0.5, 0.5) == Approx(pi).epsilon(1e-13));
  CHECK(beta(0.75, 0.25) == Approx(pi * std::sqrt(2.0)).epsilon(1e-13));
  const double q = quad::endpoints([](double t, double tc) { return 1.0 / std::sqrt(t * tc); }, 0.0, 1.0);
  CHECK(q == Approx(beta(0.5, 0.5)).epsilon(1e-10));
  CHECK_THROWS_AS(beta(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(beta(1.0, -0.5), std::domain_error);
}

TEST_CASE("incomplete beta: lower piece and tail") {
  for (double a : {0.2, 0.5, 1.3, 2.5})
    for (double b : {0.3, 0.8, 1.7})
      for (double x : {0.0, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0}) {
        const double ref = boost::math::beta(a, b, x);
        CHECK(std::abs(beta_lower(x, a, b) - ref) <= 1e-14 * std::max(1.0, ref));
      }
  // tail with non-positive first parameter, checked against quadrature
  for (double a : {-0.7, 0.0, 0.4})
    for (double x : {0.003, 0.2, 0.6}) {
      const double b = 0.35;
      const double ref = quad::endpoints(
          [&](double dl, double dr) { return std::pow(x + dl, a - 1.0) * std::pow(dr, b - 1.0); }, x, 1.0);
      CHECK(beta_tail(x, a, b) == Approx(ref).epsilon(1e-11));
    }
}

TEST_CASE("bessel: spec examples") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(-0.5, pi) == Approx(-std::sqrt(2.0) / pi).epsilon(1e-13));
  CHECK(std::abs(bessel_j(0.5, pi)) < 1e-15);
  CHECK(bessel_i(0.0, 0.0) == 1.0);
  CHECK(bessel_i(-0.5, 1.0) == Approx(std::sqrt(2.0 / pi) * std::cosh(1.0)).epsilon(1e-13));
  CHECK(bessel_i(0.5, 1.0) == Approx(std::sqrt(2.0 / pi) * std::sinh(1.0)).epsilon(1e-13));
}

TEST_CASE("bessel: half-integer closed forms on (0,20]") {
  SeriesConfig cfg;
  cfg.rel_tol = 1e-12;
  for (double y = 0.05; y <= 20.0; y += 0.05) {
    const double jc = std::sqrt(2.0 / (pi * y)) * std::cos(y);
    const double ic = std::sqrt(2.0 / (pi * y)) * std::cosh(y);
    CHECK(std::abs(bessel_j(-0.5, y, cfg) - jc) <= cfg.rel_tol * (1.0 + std::abs(jc)) * 10.0);
    CHECK(std::abs(bessel_i(-0.5, y, cfg) - ic) <= cfg.rel_tol * ic * 10.0);
  }
  for (double nu : {0.25, 0.7})
    for (double y : {0.3, 2.0, 9.0})
      CHECK(bessel_j(nu, y) == Approx(boost::math::cyl_bessel_j(nu, y)).epsilon(1e-12));
}

TEST_CASE("bessel: domain and non-convergence") {
  CHECK_THROWS_AS(bessel_j(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_i(0.5, -1.0), std::domain_error);
  CHECK(std::isinf(bessel_j(-0.5, 0.0)));
  SeriesConfig tiny;
  tiny.max_terms = 2;
  CHECK_THROWS_AS(bessel_j(0.0, 10.0, tiny), convergence_error);
}

TEST_CASE("kummer: spec examples") {
  CHECK(kummer_1f1(0.3, 1.0, 0.0) == 1.0);
  CHECK(kummer_1f1(1.0, 1.0, 1.0) == Approx(std::exp(1.0)).epsilon(1e-14));
  const double a = 0.6, b = 1.0, z = -2.0;
  const double v = kummer_1f1(a, b, z);
  CHECK(v == Approx(kummer_1f1_integral(a, b, z)).epsilon(1e-12));
  const double d = 1e-4;
  const double fd = (kummer_1f1(a, b, z + d) - kummer_1f1(a, b, z - d)) / (2.0 * d);
  CHECK(std::abs(fd - a / b * kummer_1f1(a + 1.0, b + 1.0, z)) < 1e-8);
}

TEST_CASE("kummer: series vs integral, positivity, derivative identity") {
  SeriesConfig cfg;
  cfg.rel_tol = 1e-13;
  for (double a : {0.2, 0.6, 1.6})
    for (double b : {1.0, 2.0, 2.5}) {
      if (!(a < b)) continue;
      for (double z = -10.0; z <= 10.0; z += 0.5) {
        const double s = kummer_1f1_series(a, b, z, cfg);
        const double q = kummer_1f1_integral(a, b, z);
        CHECK(std::abs(s - q) <= 10.0 * cfg.rel_tol * std::abs(q));
        CHECK(s > 0.0);
        CHECK(s == Approx(boost::math::hypergeometric_1F1(a, b, z)).epsilon(1e-12));
        for (double d : {1e-2, 5e-3}) {
          const double fd = (kummer_1f1(a, b, z + d, cfg) - kummer_1f1(a, b, z - d, cfg)) / (2.0 * d);
          const double exact = a / b * kummer_1f1(a + 1.0, b + 1.0, z, cfg);
          CHECK(std::abs(fd - exact) <= 2.0 * d * d * std::max(1.0, std::abs(exact)) * 10.0);
        }
      }
    }
  // large |z| uses the integral representation
  CHECK(kummer_1f1(0.6, 2.0, -80.0) == Approx(boost::math::hypergeometric_1F1(0.6, 2.0, -80.0)).epsilon(1e-10));
  CHECK(kummer_1f1(0.6, 2.0, 40.0) == Approx(boost::math::hypergeometric_1F1(0.6, 2.0, 40.0)).epsilon(1e-10));
}

TEST_CASE("series config invariants") {
  SeriesConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), config_error);
  bad.rel_tol = 1.0;
  CHECK_THROWS_AS(bad.validate(), config_error);
  SeriesConfig bad2;
  bad2.max_terms = 0;
  CHECK_THROWS_AS(bad2.validate(), config_error);
}
