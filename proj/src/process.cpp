#include "gvp/process.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gvp/errors.h"
#include "gvp/fraccalc.h"
#include "gvp/parallel.h"
#include "gvp/product.h"
#include "gvp/quadrature.h"
#include "gvp/specfun.h"

namespace gvp {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double kSumTol = 1e-12;

double recip(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

// int_s^t u^{eb} (u-s)^{ec} du, 0 <= s < t, ec > -1
double power_pair_integral(double eb, double ec, double s, double t) {
  if (s <= 0.0) {
    const double e = eb + ec;
    if (!(e > -1.0)) return inf;
    return std::pow(t, e + 1.0) / (e + 1.0);
  }
  const double sigma = -ec;
  return std::pow(s, eb + 1.0 - sigma) * beta_tail(s / t, sigma - eb - 1.0, 1.0 - sigma);
}

void require_triple(const KernelTriple& kt, const char* what) {
  if (kt.wiener) throw config_error(std::string(what) + ": needs an (a,b,c) triple, not the Wiener preset");
}

const SoninePair& require_pair(const KernelTriple& kt, const char* what) {
  if (!kt.pair) throw config_error(std::string(what) + ": kernel triple carries no Sonine partner for c");
  return *kt.pair;
}

void require_grid(const KernelTriple& kt, const GridFunction& f, const char* what) {
  f.validate();
  if (f.t0 != 0.0 || std::abs(f.t1 - kt.T) > 1e-12 * kt.T)
    throw config_error(std::string(what) + ": grid function must live on [0, T]");
}

bool is_zero(const GridFunction& f) {
  return std::all_of(f.values.begin(), f.values.end(), [](double v) { return v == 0.0; });
}

// Largest single-cell jump against total variation, nodes 1..n.
bool looks_ac(const GridFunction& g, std::string& reason) {
  if (g.left_exponent > 0.0 || g.right_exponent > 0.0) {
    reason = "function is unbounded at an endpoint";
    return false;
  }
  const std::size_t n = g.n;
  if (n < 8) return true;
  double tv = 0.0, jump = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = std::abs(g.values[i + 1] - g.values[i]);
    if (!std::isfinite(d)) {
      reason = "non-finite samples";
      return false;
    }
    tv += d;
    jump = std::max(jump, d);
  }
  if (tv > 0.0 && jump >= 0.25 * tv) {
    reason = "a single cell carries over a quarter of the total variation";
    return false;
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(0xD1B54A32D192ED03ULL + static_cast<std::uint64_t>(index)));
}

double PowerLaw::operator()(double x) const {
  if (exponent == 0.0) return coef;
  return coef * std::pow(x, exponent);
}

double PowerLaw::norm(double p, double T) const {
  if (coef == 0.0) return 0.0;
  if (std::isinf(p)) {
    if (exponent < 0.0) return inf;
    return std::abs(coef) * std::pow(T, exponent);
  }
  const double e = p * exponent + 1.0;
  if (!(e > 0.0)) return inf;
  return std::abs(coef) * std::pow(std::pow(T, e) / e, 1.0 / p);
}

void KernelTriple::validate() const {
  if (!(T > 0.0)) throw config_error("kernel triple: T must be positive");
  if (wiener) return;
  for (double e : {p, q, r})
    if (std::isnan(e)) throw config_error("kernel triple: exponent is NaN");
  if (!(c.exponent > -1.0)) throw config_error("kernel triple: c must be locally integrable (exponent > -1)");
  if (c.coef == 0.0) throw config_error("kernel triple: c must not vanish");
}

KernelTriple& KernelTriple::with_power_partner() {
  require_triple(*this, "with_power_partner");
  const double sigma = -c.exponent;
  if (!(sigma > 0.0 && sigma < 1.0)) throw config_error("with_power_partner: c must be x^{-sigma} with sigma in (0,1)");
  SoninePair sp = power_pair(sigma, T);
  sp.c = sp.c.scaled(c.coef);
  sp.h = sp.h.scaled(1.0 / c.coef);
  pair = std::move(sp);
  return *this;
}

std::pair<double, double> KernelTriple::partner_power() const {
  const SoninePair& sp = require_pair(*this, "partner_power");
  if (sp.h.kind != SingularKernelSpec::Kind::power) throw config_error("partner_power: partner of c is not a power law");
  return {sp.h.scale, sp.h.exponent};
}

SingularKernelSpec KernelTriple::c_kernel() const {
  require_triple(*this, "c_kernel");
  return SingularKernelSpec::power(1.0 + c.exponent, c.coef);
}

KernelTriple KernelTriple::wiener_process(double T) {
  KernelTriple kt;
  kt.T = T;
  kt.wiener = true;
  kt.p = inf;
  kt.q = inf;
  kt.r = 1.0;
  kt.label = "wiener";
  return kt;
}

FBmSpec::FBmSpec(double H_, double T_) : H(H_), T(T_) {
  if (!(H > 0.5 && H < 1.0)) throw config_error("fBm: Hurst index must lie in (1/2, 1)");
  if (!(T > 0.0)) throw config_error("fBm: T must be positive");
  c_H = std::sqrt(2.0 * H * gamma(1.5 - H) / (gamma(H + 0.5) * gamma(2.0 - 2.0 * H)));
}

double FBmSpec::d_H() const { return (H - 0.5) * c_H; }

KernelTriple FBmSpec::triple(double eps) const {
  if (!(eps > 0.0)) throw config_error("fBm triple: eps must be positive");
  KernelTriple kt;
  kt.a = {d_H(), 0.5 - H};
  kt.b = {1.0, H - 0.5};
  kt.c = {1.0, H - 1.5};
  kt.p = 1.0 / (H - 0.5 + eps / 3.0);
  kt.q = 3.0 / eps;
  kt.r = 1.0 / (1.5 - H + eps / 3.0);
  kt.T = T;
  std::ostringstream os;
  os << "fbm(H=" << H << ")";
  kt.label = os.str();
  kt.with_power_partner();
  return kt;
}

double FBmSpec::covariance(double t1, double t2) const {
  return 0.5 * (std::pow(t1, 2.0 * H) + std::pow(t2, 2.0 * H) - std::pow(std::abs(t2 - t1), 2.0 * H));
}

double kernel_eval(const KernelTriple& kt, double t, double s) {
  if (s >= t) return 0.0;
  if (kt.wiener) return 1.0;
  if (kt.b.coef == 0.0 || kt.a.coef == 0.0) return 0.0;
  const double integral = power_pair_integral(kt.b.exponent, kt.c.exponent, s, t);
  return kt.a(s) * kt.b.coef * kt.c.coef * integral;
}

std::vector<ConstancyResult> fbm_constancy_check(double H, const std::vector<std::pair<double, double>>& pairs) {
  if (!(H > 0.5 && H < 1.0)) throw config_error("fbm_constancy_check: H must lie in (1/2, 1)");
  const double target = beta(1.5 - H, H - 0.5);
  std::vector<ConstancyResult> out;
  out.reserve(pairs.size());
  for (const auto& [s, t] : pairs) {
    if (!(s >= 0.0 && s < t)) throw config_error("fbm_constancy_check: need 0 <= s < t");
    const double v = quad::endpoints(
        [H](double dl, double dr) { return std::pow(dr, 0.5 - H) * std::pow(dl, H - 1.5); }, s, t, 1e-14);
    out.push_back({s, t, v, v - target});
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::rejected:
      return "rejected";
    case Verdict::well_defined:
      return "well_defined";
    case Verdict::continuous_modification:
      return "continuous_modification";
  }
  return "?";
}

Admissibility admissibility(double p, double q, double r) {
  Admissibility out;
  if (std::isnan(p) || std::isnan(q) || std::isnan(r)) {
    out.reason = "exponent is NaN";
    return out;
  }
  if (!(p >= 2.0)) {
    out.reason = "K1 violated: p must lie in [2, inf]";
    return out;
  }
  if (!(q >= 1.0) || !(r >= 1.0)) {
    out.reason = "K1 violated: q and r must lie in [1, inf]";
    return out;
  }
  const double sum = recip(p) + recip(q) + recip(r);
  if (sum > 1.5 + kSumTol) {
    std::ostringstream os;
    os << "K1 violated: 1/p + 1/q + 1/r = " << sum << " > 3/2";
    out.reason = os.str();
    return out;
  }
  if (recip(p) + recip(r) < 1.5 - kSumTol) {
    out.verdict = Verdict::continuous_modification;
  } else {
    out.verdict = Verdict::well_defined;
    out.reason = "1/p + 1/r < 3/2 fails: no continuous modification guaranteed";
  }
  return out;
}

Admissibility admissibility(const KernelTriple& kt) {
  kt.validate();
  if (kt.wiener) return {Verdict::continuous_modification, "Wiener preset"};
  Admissibility out = admissibility(kt.p, kt.q, kt.r);
  if (out.verdict == Verdict::rejected) return out;
  const struct {
    const PowerLaw& f;
    double e;
    const char* name;
  } checks[] = {{kt.a, kt.p, "a not in L^p"}, {kt.b, kt.q, "b not in L^q"}, {kt.c, kt.r, "c not in L^r"}};
  for (const auto& ch : checks)
    if (!std::isfinite(ch.f.norm(ch.e, kt.T))) return {Verdict::rejected, std::string("K1 violated: ") + ch.name};
  return out;
}

HolderPrediction holder_predict(const KernelTriple& kt, const HolderOptions& opts) {
  HolderPrediction out;
  const Admissibility adm = admissibility(kt);
  if (kt.wiener) {
    out.lambda_global = 0.5;
    out.lambda_interior = 0.5;
    out.lambda_at_zero = 0.5;
    out.assumptions_used.push_back("wiener: Brownian paths are Hoelder up to order 1/2");
    out.not_applicable.push_back("limit: the limiting-exponent lemma needs an (a,b,c) triple");
    return out;
  }
  if (adm.verdict != Verdict::continuous_modification) {
    const std::string why = "admissibility " + to_string(adm.verdict) + ": " + adm.reason;
    for (const char* f : {"global", "interior", "at_zero", "limit"}) out.not_applicable.push_back(std::string(f) + ": " + why);
    return out;
  }
  const double P = recip(kt.p), Q = recip(kt.q), R = recip(kt.r);
  auto in_range = [](double l) { return l > 0.0; };

  {
    double lam;
    if (P + R >= 0.5) {
      lam = 1.5 - P - Q - R;
      out.assumptions_used.push_back("global: lemma, 1/p + 1/r >= 1/2, order 3/2 - 1/p - 1/q - 1/r");
    } else {
      lam = 1.5 - Q - std::max(0.5, P + R);
      out.assumptions_used.push_back("global: theorem, order 3/2 - 1/q - max(1/2, 1/p + 1/r)");
    }
    if (in_range(lam))
      out.lambda_global = std::min(lam, 1.0);
    else
      out.not_applicable.push_back("global: predicted order is not positive");
  }

  if (opts.interior) {
    const Interior& in = *opts.interior;
    const double Q1 = recip(in.q1), R1 = recip(in.r1), P1 = recip(in.p1);
    auto on = [&](const PowerLaw& f, double e, double lo) { return lo > 0.0 || f.norm(e, kt.T) < inf; };
    if (!(in.t1 >= 0.0 && in.t2 >= 0.0 && in.t1 + in.t2 < kt.T)) {
      out.not_applicable.push_back("interior: need t1, t2 >= 0 with t1 + t2 < T");
    } else if (!(in.p1 >= kt.p && in.q1 >= kt.q && kt.q > 1.0 && in.r1 >= kt.r)) {
      out.not_applicable.push_back("interior: need p <= p1, 1 < q <= q1, r <= r1");
    } else if (!(on(kt.a, in.p1, in.t1) && on(kt.b, in.q1, in.t1 + in.t2) && on(kt.c, in.r1, in.t2))) {
      out.not_applicable.push_back("interior: a, b, c not in the interior exponent spaces");
    } else if (!(Q1 + std::max({0.5, P + R1, P1 + R}) < 1.5)) {
      out.not_applicable.push_back("interior: 1/q1 + max(1/2, 1/p + 1/r1, 1/p1 + 1/r) < 3/2 fails");
    } else {
      const double lam = 1.5 - Q1 - std::max({0.5, P + R1, P1 + R});
      if (in_range(lam)) {
        out.lambda_interior = std::min(lam, 1.0);
        out.interior_from = in.t1 + in.t2;
        out.assumptions_used.push_back("interior: theorem on [t1+t2, T], order 3/2 - 1/q1 - max(1/2, 1/p + 1/r1, 1/p1 + 1/r)");
      } else {
        out.not_applicable.push_back("interior: predicted order is not positive");
      }
    }
  } else {
    out.not_applicable.push_back("interior: no (t1, t2, p1, q1, r1) supplied");
  }

  {
    const Exponents e = opts.at_zero.value_or(Exponents{kt.p, kt.q, kt.r});
    const Admissibility az = admissibility(e.p, e.q, e.r);
    if (az.verdict == Verdict::rejected) {
      out.not_applicable.push_back("at_zero: " + az.reason);
    } else if (std::isinf(e.q)) {
      out.not_applicable.push_back("at_zero: lemma needs q < inf");
    } else if (!(kt.a.norm(e.p, kt.T) < inf && kt.b.norm(e.q, kt.T) < inf && kt.c.norm(e.r, kt.T) < inf)) {
      out.not_applicable.push_back("at_zero: a, b, c not in the at-zero exponent spaces");
    } else {
      const double lam = kt.b.exponent + 1.0 / e.q;
      if (in_range(lam)) {
        out.lambda_at_zero = std::min(lam, 1.0);
        out.assumptions_used.push_back("at_zero: lemma with majorant ||b 1_[0,t]||_q = C t^{e_b + 1/q}");
      } else {
        out.not_applicable.push_back("at_zero: majorant exponent is not positive");
      }
    }
  }

  if (opts.limiting) {
    const Exponents& e = *opts.limiting;
    const double P0 = recip(e.p), Q0 = recip(e.q), R0 = recip(e.r);
    if (!(P0 + Q0 + R0 < 1.5 - kSumTol)) {
      out.not_applicable.push_back("limit: need 1/p0 + 1/q0 + 1/r0 < 3/2");
    } else {
      const double lam = 1.5 - Q0 - std::max(0.5, P0 + R0);
      if (in_range(lam)) {
        out.lambda_limit = std::min(lam, 1.0);
        out.assumptions_used.push_back("limit: order 3/2 - 1/q0 - max(1/2, 1/p0 + 1/r0) as the exponents approach (p0, q0, r0)");
      } else {
        out.not_applicable.push_back("limit: predicted order is not positive");
      }
    }
  } else {
    out.not_applicable.push_back("limit: no limiting exponents supplied");
  }
  return out;
}

HolderOptions fbm_holder_options(const FBmSpec& f, double eps, double t0) {
  const double H = f.H;
  HolderOptions o;
  o.interior = Interior{t0 / 2.0, t0 / 2.0, 3.0 / eps, 3.0 / eps, 3.0 / eps};
  o.at_zero = Exponents{1.0 / (H - 0.5 + eps / 2.0), 1.0 / (0.5 - eps), 1.0 / (1.5 - H + eps / 2.0)};
  o.limiting = Exponents{1.0 / (H - 0.5), inf, 1.0 / (1.5 - H)};
  return o;
}

std::string to_string(Scheme s) { return s == Scheme::midpoint ? "midpoint" : "leftpoint"; }

void SimulationConfig::validate() const {
  if (n_steps < 2) throw config_error("simulation: n_steps must be at least 2");
  if (n_paths < 1) throw config_error("simulation: n_paths must be at least 1");
}

double PathSet::increment_variance_z() const {
  double s = 0.0;
  std::size_t count = 0;
  for (const auto& row : dW)
    for (double d : row) {
      s += d * d;
      ++count;
    }
  if (count == 0) throw config_error("increment_variance_z: no increments");
  const double v = s / static_cast<double>(count);
  const double h = step();
  return (v - h) / (h * std::sqrt(2.0 / static_cast<double>(count)));
}

Matrix wiener_increments(std::size_t n_paths, std::size_t n_steps, double T, std::uint64_t seed, unsigned threads) {
  if (n_paths < 1 || n_steps < 1) throw config_error("wiener_increments: need at least one path and one step");
  if (!(T > 0.0)) throw config_error("wiener_increments: T must be positive");
  const double sd = std::sqrt(T / static_cast<double>(n_steps));
  Matrix dW(n_paths, std::vector<double>(n_steps));
  parallel_for(n_paths, threads, [&](std::size_t k) {
    std::mt19937_64 rng(stream_seed(seed, k));
    std::normal_distribution<double> nd(0.0, sd);
    for (double& d : dW[k]) d = nd(rng);
  });
  return dW;
}

Matrix coarsen(const Matrix& dW, std::size_t factor) {
  if (factor < 1) throw config_error("coarsen: factor must be positive");
  Matrix out;
  out.reserve(dW.size());
  for (const auto& row : dW) {
    if (row.size() % factor != 0) throw config_error("coarsen: step count not divisible by factor");
    std::vector<double> c(row.size() / factor, 0.0);
    for (std::size_t j = 0; j < row.size(); ++j) c[j / factor] += row[j];
    out.push_back(std::move(c));
  }
  return out;
}

Matrix kernel_matrix(const KernelTriple& kt, std::size_t n, Scheme scheme, unsigned threads) {
  kt.validate();
  if (n < 1) throw config_error("kernel_matrix: n must be positive");
  if (scheme == Scheme::leftpoint && !kt.wiener && kt.a.exponent < 0.0 && kt.a.coef != 0.0)
    throw numerical_error("leftpoint scheme evaluates a(0), which is singular for this kernel; use midpoint");
  const double h = kt.T / static_cast<double>(n);
  const double shift = scheme == Scheme::midpoint ? 0.5 : 0.0;
  Matrix K(n + 1);
  parallel_for(n + 1, threads, [&](std::size_t i) {
    K[i].resize(i);
    const double t = h * static_cast<double>(i);
    for (std::size_t j = 0; j < i; ++j) K[i][j] = kernel_eval(kt, t, h * (static_cast<double>(j) + shift));
  });
  for (std::size_t i = 0; i <= n; ++i)
    for (double v : K[i])
      if (!std::isfinite(v)) throw numerical_error("kernel_matrix: non-finite kernel value");
  return K;
}

PathSet simulate_with(const KernelTriple& kt, Matrix dW, const SimulationConfig& cfg) {
  cfg.validate();
  const Admissibility adm = admissibility(kt);
  if (adm.verdict == Verdict::rejected) throw admissibility_error(adm.reason);
  if (dW.size() != cfg.n_paths) throw config_error("simulate: increment rows do not match n_paths");
  for (const auto& row : dW)
    if (row.size() != cfg.n_steps) throw config_error("simulate: increment columns do not match n_steps");
  const std::size_t n = cfg.n_steps;
  PathSet ps;
  ps.T = kt.T;
  ps.n_steps = n;
  ps.n_paths = cfg.n_paths;
  ps.seed = cfg.seed;
  ps.scheme = cfg.scheme;
  ps.kernel = kt.label;
  ps.X.assign(cfg.n_paths, std::vector<double>(n + 1, 0.0));
  if (kt.wiener) {
    for (std::size_t k = 0; k < cfg.n_paths; ++k)
      for (std::size_t i = 0; i < n; ++i) ps.X[k][i + 1] = ps.X[k][i] + dW[k][i];
  } else {
    const Matrix K = kernel_matrix(kt, n, cfg.scheme, cfg.threads);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t k) {
      const auto& d = dW[k];
      auto& x = ps.X[k];
      for (std::size_t i = 1; i <= n; ++i) {
        double s = 0.0;
        const auto& Ki = K[i];
        for (std::size_t j = 0; j < i; ++j) s += Ki[j] * d[j];
        x[i] = s;
      }
    });
  }
  ps.dW = std::move(dW);
  return ps;
}

PathSet simulate(const KernelTriple& kt, const SimulationConfig& cfg) {
  cfg.validate();
  return simulate_with(kt, wiener_increments(cfg.n_paths, cfg.n_steps, kt.T, cfg.seed, cfg.threads), cfg);
}

double covariance(const KernelTriple& kt, double t1, double t2) {
  kt.validate();
  const double lim = kt.T * (1.0 + 1e-12);
  if (!(t1 >= 0.0 && t2 >= 0.0 && t1 <= lim && t2 <= lim)) throw config_error("covariance: times must lie in [0, T]");
  const double m = std::min(t1, t2), M = std::max(t1, t2);
  if (m <= 0.0) return 0.0;
  if (kt.wiener) return m;
  return quad::endpoints([&](double dl, double) { return kernel_eval(kt, m, dl) * kernel_eval(kt, M, dl); }, 0.0, m,
                         1e-10);
}

void check_K2(const KernelTriple& kt) {
  require_triple(kt, "K2");
  if (!(kt.a.coef > 0.0)) throw admissibility_error("K2 violated: a must be positive on (0, T]");
  if (!(kt.b.coef > 0.0)) throw admissibility_error("K2 violated: b must be positive on (0, T]");
}

GridFunction op_J(const KernelTriple& kt, const GridFunction& f) {
  check_K2(kt);
  require_grid(kt, f, "op_J");
  const GridFunction af = mul_power(f, kt.a.coef, kt.a.exponent);
  return mul_power(conv_lower(kt.c_kernel(), af), kt.b.coef, kt.b.exponent);
}

GridFunction op_Jstar(const KernelTriple& kt, const GridFunction& g) {
  check_K2(kt);
  require_grid(kt, g, "op_Jstar");
  const GridFunction bg = mul_power(g, kt.b.coef, kt.b.exponent);
  return mul_power(conv_upper(kt.c_kernel(), bg), kt.a.coef, kt.a.exponent);
}

GridFunction op_L(const KernelTriple& kt, const GridFunction& f) {
  check_K2(kt);
  const SoninePair& sp = require_pair(kt, "op_L");
  require_grid(kt, f, "op_L");
  if (is_zero(f)) return GridFunction::zeros(f.t0, f.t1, f.n);
  const GridFunction g = mul_power(f, 1.0 / kt.b.coef, -kt.b.exponent);
  std::string why;
  if (!looks_ac(g, why)) throw admissibility_error("op_L: f/b fails the discrete AC check: " + why);
  const double g0 = g.left_exponent < 0.0 ? 0.0 : g.values[0];
  return mul_power(sonine_derivative_lower(sp.h, g, g0), 1.0 / kt.a.coef, -kt.a.exponent);
}

GridFunction op_Lstar(const KernelTriple& kt, const GridFunction& g) {
  check_K2(kt);
  const SoninePair& sp = require_pair(kt, "op_Lstar");
  require_grid(kt, g, "op_Lstar");
  if (is_zero(g)) return GridFunction::zeros(g.t0, g.t1, g.n);
  const GridFunction phi = mul_power(g, 1.0 / kt.a.coef, -kt.a.exponent);
  std::string why;
  if (!looks_ac(phi, why)) throw admissibility_error("op_Lstar: g/a fails the discrete AC check: " + why);
  const double gT = phi.right_exponent < 0.0 ? 0.0 : phi.values[phi.n];
  return mul_power(sonine_derivative_upper(sp.h, phi, gT), 1.0 / kt.b.coef, -kt.b.exponent);
}

double ck_roughness(const std::vector<double>& v, double step, int k) {
  if (k < 0) throw config_error("ck_roughness: k must be non-negative");
  const std::size_t order = static_cast<std::size_t>(k) + 1;
  if (v.size() < order + 2) return 0.0;
  std::vector<double> coef(order + 1);
  for (std::size_t m = 0; m <= order; ++m) {
    double c = 1.0;
    for (std::size_t l = 0; l < m; ++l) c = c * static_cast<double>(order - l) / static_cast<double>(l + 1);
    coef[m] = (m % 2 == order % 2) ? c : -c;
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + order < v.size(); ++i) {
    double d = 0.0;
    for (std::size_t m = 0; m <= order; ++m) d += coef[m] * v[i + m];
    if (!std::isfinite(d)) return inf;
    worst = std::max(worst, std::abs(d) / step);
  }
  return worst;
}

K3Report check_K3(const KernelTriple& kt, std::size_t n) {
  K3Report rep;
  if (kt.wiener) {
    rep.reason = "K3 needs an (a,b,c) triple";
    return rep;
  }
  check_K2(kt);
  if (n < 8) throw config_error("check_K3: need at least 8 cells");
  const double h = kt.T / static_cast<double>(n);
  std::vector<double> ainv(n + 1), binv(n + 1), a2h(n + 1);
  double hc = 0.0, hs = 0.0;
  if (kt.pair && kt.pair->h.kind == SingularKernelSpec::Kind::power) std::tie(hc, hs) = kt.partner_power();
  for (std::size_t i = 1; i <= n; ++i) {
    const double s = h * static_cast<double>(i);
    ainv[i] = 1.0 / kt.a(s);
    binv[i] = 1.0 / kt.b(s);
    a2h[i] = ainv[i] * ainv[i] * hc * std::pow(s, -hs);
  }
  rep.a_inv_c1 = ck_roughness(ainv, h, 1);
  rep.b_inv_c2 = ck_roughness(binv, h, 2);
  const double ed = -kt.b.exponent;
  rep.d_vanishes = ed > 1.0;
  rep.a_inv2_h_c1 = kt.pair ? ck_roughness(a2h, h, 1) : inf;
  std::vector<std::string> fails;
  if (!(rep.a_inv_c1 <= kCkThreshold)) fails.push_back("a^{-1} fails the discrete C^1 check");
  if (!(rep.b_inv_c2 <= kCkThreshold)) fails.push_back("b^{-1} fails the discrete C^2 check");
  if (!rep.d_vanishes && !(rep.a_inv2_h_c1 <= kCkThreshold))
    fails.push_back("neither d(0) = d'(0) = 0 nor a^{-2} h in C^1");
  rep.ok = fails.empty();
  for (std::size_t i = 0; i < fails.size(); ++i) rep.reason += (i ? "; " : "") + fails[i];
  return rep;
}

PreimageResult covariance_preimage(const KernelTriple& kt, const GridFunction& f) {
  check_K2(kt);
  require_pair(kt, "covariance_preimage");
  require_grid(kt, f, "covariance_preimage");
  const Admissibility adm = admissibility(kt);
  if (adm.verdict == Verdict::rejected) throw admissibility_error(adm.reason);
  const K3Report k3 = check_K3(kt, f.n);
  if (!k3.ok) throw admissibility_error("K3 violated: " + k3.reason);
  if (f.left_exponent > 0.0) throw config_error("covariance_preimage: f must be finite at 0");
  const double scale = std::max(1.0, max_abs(f));
  if (f.left_exponent == 0.0 && std::abs(f.values[0]) > 1e-14 * scale)
    throw config_error("covariance_preimage: f(0) must be 0");
  if (!(ck_roughness(f.values, f.step(), 3) <= kCkThreshold))
    throw config_error("covariance_preimage: f fails the discrete C^3 check");
  PreimageResult out;
  out.mu_survival = op_Lstar(kt, op_L(kt, derivative(f)));
  const GridFunction back = integrate_lower(op_J(kt, op_Jstar(kt, out.mu_survival)));
  out.residual = max_abs_diff(back, f, 0);
  return out;
}

namespace {

struct InversionRow {
  const KernelTriple& kt;
  double h, A, ea, B, eb, hc, hs;
  product::CellMoments cm;

  InversionRow(const KernelTriple& k, std::size_t n)
      : kt(k),
        h(k.T / static_cast<double>(n)),
        A(k.a.coef),
        ea(k.a.exponent),
        B(k.b.coef),
        eb(k.b.exponent),
        hc(k.partner_power().first),
        hs(k.partner_power().second),
        cm(k.b.exponent, k.partner_power().second) {}

  // b^{-1}(s) int_s^t p'(v) h(v - s) dv
  double second(double t, double s) const {
    if (ea == 0.0) return 0.0;
    const double dp = -ea / A;
    return std::pow(s, -eb) / B * dp * hc * power_pair_integral(-ea - 1.0, -hs, s, t);
  }

  std::vector<double> row(std::size_t i) const {
    std::vector<double> w(i, 0.0);
    if (i == 0) return w;
    std::vector<double> m0, m1;
    cm.at(i, m0, m1);
    const double t = h * static_cast<double>(i);
    const double p_t = std::pow(t, -ea) / A;
    const double first = p_t * hc / B * std::pow(h, 1.0 - eb - hs) / h;
    const auto& g4 = quad::gauss01<4>();
    const auto& g8 = quad::gauss01<8>();
    for (std::size_t j = 0; j < i; ++j) {
      double avg = 0.0;
      if (j == 0) {
        for (std::size_t m = 0; m < 8; ++m) {
          const double v = g8.x[m];
          const double v3 = v * v * v;
          avg += g8.w[m] * 4.0 * v3 * second(t, h * v3 * v);
        }
      } else {
        for (std::size_t m = 0; m < 4; ++m) avg += g4.w[m] * second(t, h * (static_cast<double>(j) + g4.x[m]));
      }
      w[j] = first * m0[j] - avg;
    }
    return w;
  }
};

void require_inversion(const KernelTriple& kt) {
  check_K2(kt);
  require_pair(kt, "invert");
  kt.partner_power();
  const K3Report k3 = check_K3(kt, 64);
  if (!k3.ok) throw admissibility_error("K3 violated: " + k3.reason);
}

}  // namespace

Matrix inversion_weights(const KernelTriple& kt, std::size_t n, unsigned threads) {
  require_inversion(kt);
  if (n < 2) throw config_error("inversion_weights: n must be at least 2");
  Matrix w(n + 1);
  const unsigned t = resolve_threads(threads);
  const std::size_t chunks = std::min<std::size_t>(t, n + 1);
  parallel_for(chunks, t, [&](std::size_t c) {
    InversionRow ir(kt, n);
    for (std::size_t i = c; i <= n; i += chunks) w[i] = ir.row(i);
  });
  return w;
}

Matrix invert(const KernelTriple& kt, const PathSet& paths, unsigned threads) {
  if (std::abs(paths.T - kt.T) > 1e-12 * kt.T) throw config_error("invert: path horizon differs from the kernel's");
  const std::size_t n = paths.n_steps;
  const Matrix w = inversion_weights(kt, n, threads);
  Matrix out(paths.n_paths, std::vector<double>(n + 1, 0.0));
  parallel_for(paths.n_paths, threads, [&](std::size_t k) {
    const auto& x = paths.X[k];
    if (x.size() != n + 1) throw config_error("invert: path length does not match n_steps");
    std::vector<double> dx(n);
    for (std::size_t j = 0; j < n; ++j) dx[j] = x[j + 1] - x[j];
    for (std::size_t i = 1; i <= n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < i; ++j) s += w[i][j] * dx[j];
      out[k][i] = s;
    }
  });
  return out;
}

double inversion_mse_at_T(const KernelTriple& kt, std::size_t n, Scheme scheme) {
  require_inversion(kt);
  if (n < 2) throw config_error("inversion_mse_at_T: n must be at least 2");
  const InversionRow ir(kt, n);
  const std::vector<double> w = ir.row(n);
  const Matrix K = kernel_matrix(kt, n, scheme);
  std::vector<double> M(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l <= j; ++l) M[l] += w[j] * (K[j + 1][l] - (l < j ? K[j][l] : 0.0));
  double mse = 0.0;
  for (double m : M) mse += (m - 1.0) * (m - 1.0);
  return mse * ir.h;
}

IntermediateIdentity fbm_intermediate_identity(const FBmSpec& f, const PathSet& paths) {
  const std::size_t n = paths.n_steps;
  const double H = f.H, h = paths.step();
  if (std::abs(paths.T - f.T) > 1e-12 * f.T) throw config_error("fbm_intermediate_identity: horizon mismatch");
  const double e = H - 0.5;
  product::CellMoments cm(e, e);
  std::vector<double> m0, m1;
  cm.at(n, m0, m1);
  std::vector<double> omega(n), rho(n);
  const double so = std::pow(h, 1.0 - 2.0 * e) / h;
  const double g = 1.5 - H;
  const double sr = std::pow(h, 0.5 - H) / g;
  const double coef = f.d_H() * beta(1.5 - H, H - 0.5);
  for (std::size_t j = 0; j < n; ++j) {
    omega[j] = so * m0[j];
    const double jj = static_cast<double>(j);
    rho[j] = coef * sr * (std::pow(jj + 1.0, g) - std::pow(jj, g));
  }
  IntermediateIdentity out;
  out.lhs.resize(paths.n_paths);
  out.rhs.resize(paths.n_paths);
  double ss = 0.0;
  for (std::size_t k = 0; k < paths.n_paths; ++k) {
    double l = 0.0, r = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      l += omega[j] * (paths.X[k][j + 1] - paths.X[k][j]);
      r += rho[j] * paths.dW[k][j];
    }
    out.lhs[k] = l;
    out.rhs[k] = r;
    const double d = l - r;
    out.max_abs_diff = std::max(out.max_abs_diff, std::abs(d));
    ss += d * d;
  }
  out.rms_diff = paths.n_paths ? std::sqrt(ss / static_cast<double>(paths.n_paths)) : 0.0;
  return out;
}

}  // namespace gvp
