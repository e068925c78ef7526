#include "gvp/battery.h"

#include <algorithm>
#include <cmath>

#include "gvp/errors.h"
#include "gvp/fraccalc.h"

namespace gvp {

GridFunction random_smooth(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double c[4], w[4];
  for (int k = 0; k < 4; ++k) {
    c[k] = u(rng);
    w[k] = 1.0 + 3.0 * std::abs(u(rng));
  }
  return GridFunction::sample(
      [=](double x) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += c[k] * std::cos(w[k] * x + k);
        return s;
      },
      0.0, 1.0, n);
}

BatteryReport frac_battery(double alpha, std::size_t n, std::uint64_t seed, const BatteryThresholds& th) {
  const FracOrder a(alpha);
  if (n < 16) throw config_error("frac_battery: n must be at least 16");
  BatteryReport rep;
  rep.alpha = alpha;
  rep.n = n;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  auto add = [&](std::string name, double residual, double threshold) {
    rep.items.push_back({std::move(name), residual, threshold, residual <= threshold});
  };
  const double dn = static_cast<double>(n);

  {
    const double beta = 0.5 * (1.0 - alpha);
    const auto f = random_smooth(rng, n);
    const auto lhs = rl_integral_lower(rl_integral_lower(f, a), FracOrder(beta));
    const auto rhs = rl_integral_lower(f, FracOrder(alpha + beta));
    add("semigroup", max_abs_diff(lhs, rhs, 0), th.semigroup_c / dn);
  }
  {
    const auto f = random_smooth(rng, n);
    const auto up = rl_integral_upper(f, a);
    const auto lo = rl_integral_lower(f.reversed(), a);
    double err = 0.0;
    for (std::size_t i = 0; i <= n; ++i) err = std::max(err, std::abs(up.values[i] - lo.values[n - i]));
    add("reflection", err, th.reflection);
  }
  {
    const auto f = random_smooth(rng, n), g = random_smooth(rng, n);
    const double lhs = integrate_lower(rl_integral_lower(f, a) * g).values[n];
    const double rhs = integrate_lower(f * rl_integral_upper(g, a)).values[n];
    add("integration_by_parts", std::abs(lhs - rhs) / (max_abs(f) * max_abs(g)), th.ibp);
  }
  {
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_real_distribution<double> u(1.0, 4.0);
    const double step = 1.0 / dn;
    double young = 0.0, holder = 0.0, embed = 0.0;
    for (int rep_i = 0; rep_i < 50; ++rep_i) {
      std::vector<double> f(n / 2 + 1), g(n / 2 + 11);
      for (double& x : f) x = z(rng);
      for (double& x : g) x = z(rng);
      const double p = u(rng), q = u(rng);
      const double pp = 1.0 / std::max(1.0 / p, 1.0 - 1.0 / q + 1e-3);
      const double r = 1.0 / (1.0 / pp + 1.0 / q - 1.0);
      const auto fg = full_convolution(f, g, step);
      young = std::max(young, lp_norm(fg, step, r) / (lp_norm(f, step, pp) * lp_norm(g, step, q)) - 1.0);
      const double p2 = 2.0 * p, q2 = 2.0 * q, s = 1.0 / (1.0 / p2 + 1.0 / q2);
      std::vector<double> prod(f.size()), gt(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(f.size()));
      for (std::size_t i = 0; i < f.size(); ++i) prod[i] = f[i] * g[i];
      holder = std::max(holder, lp_norm(prod, step, s) / (lp_norm(f, step, p2) * lp_norm(gt, step, q2)) - 1.0);
      const double lo = std::min(p, q), hi = std::max(p, q);
      const double len = step * static_cast<double>(f.size());
      embed = std::max(embed, lp_norm(f, step, lo) / (std::pow(len, 1.0 / lo - 1.0 / hi) * lp_norm(f, step, hi)) - 1.0);
      embed = std::max(embed, lp_norm(f, step, lo) / (std::pow(len, 1.0 / lo) * lp_norm(f, step, INFINITY)) - 1.0);
    }
    add("young", std::max(young, 0.0), th.norm_slack);
    add("holder_nonconjugate", std::max(holder, 0.0), th.norm_slack);
    add("embedding", std::max(embed, 0.0), th.norm_slack);
  }
  {
    const auto g = GridFunction::sample([](double x) { return 0.3 + std::sin(2.0 * x) + x * x; }, 0.0, 1.0, n);
    const auto f = abel_solve(g, g.values[0], a);
    const auto back = rl_integral_lower(f, a);
    add("abel_round_trip", max_abs_diff(back, g, 1), th.abel_c * std::pow(dn, -std::min(alpha, 1.0 - alpha)));
  }
  rep.all_pass = std::all_of(rep.items.begin(), rep.items.end(), [](const BatteryItem& i) { return i.pass; });
  return rep;
}

}  // namespace gvp
