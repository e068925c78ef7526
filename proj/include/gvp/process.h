#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gvp/grid_function.h"
#include "gvp/singular_kernel.h"
#include "gvp/sonine.h"

namespace gvp {

// coef * x^exponent on (0, T]
struct PowerLaw {
  double coef = 1.0;
  double exponent = 0.0;

  double operator()(double x) const;
  // L^p norm on [0, T]; p may be infinity; returns infinity when not in L^p
  double norm(double p, double T) const;
};

// K(t,s) = a(s) int_s^t b(u) c(u-s) du with power-law a, b, c.
struct KernelTriple {
  PowerLaw a, b, c;
  double p = 2.0, q = 1.0, r = 1.0;  // integrability exponents, infinity allowed
  double T = 1.0;
  bool wiener = false;  // K(t,s) = 1 for s < t (a, b, c unused)
  std::optional<SoninePair> pair;
  std::string label = "triple";

  void validate() const;
  // Attaches the power-pair partner of c.
  KernelTriple& with_power_partner();
  // The power-law partner h(x) = h_coef * x^{-h_sigma} of the attached pair.
  std::pair<double, double> partner_power() const;
  SingularKernelSpec c_kernel() const;

  static KernelTriple wiener_process(double T = 1.0);
};

struct Exponents {
  double p, q, r;
};

struct FBmSpec {
  double H;
  double T = 1.0;
  double c_H;

  explicit FBmSpec(double H, double T = 1.0);
  double d_H() const;  // (H - 1/2) c_H
  // fBm triple with the exponents 1/p = H-1/2+eps/3, 1/q = eps/3, 1/r = 3/2-H+eps/3
  KernelTriple triple(double eps = 0.1) const;
  double covariance(double t1, double t2) const;
};

double kernel_eval(const KernelTriple& kt, double t, double s);

struct ConstancyResult {
  double s, t, value, residual;
};
// int_s^t (t-u)^{1/2-H} (u-s)^{H-3/2} du - B(3/2-H, H-1/2)
std::vector<ConstancyResult> fbm_constancy_check(double H, const std::vector<std::pair<double, double>>& pairs);

enum class Verdict { rejected, well_defined, continuous_modification };
std::string to_string(Verdict v);

struct Admissibility {
  Verdict verdict = Verdict::rejected;
  std::string reason;
};
Admissibility admissibility(double p, double q, double r);
Admissibility admissibility(const KernelTriple& kt);

struct Interior {
  double t1, t2, p1, q1, r1;
};

struct HolderOptions {
  std::optional<Interior> interior;
  std::optional<Exponents> at_zero;   // exponents for the at-zero lemma (defaults to the triple's)
  std::optional<Exponents> limiting;  // p0, q0, r0 of the limiting-exponent lemma
};

// Exponents are suprema ("up to order"), never attained values.
struct HolderPrediction {
  std::optional<double> lambda_global;
  std::optional<double> lambda_interior;
  double interior_from = 0.0;  // lambda_interior holds on [t1+t2, T]
  std::optional<double> lambda_at_zero;
  std::optional<double> lambda_limit;
  std::vector<std::string> assumptions_used;
  std::vector<std::string> not_applicable;
};

HolderPrediction holder_predict(const KernelTriple& kt, const HolderOptions& opts = {});
// The option set used for fBm: eps-exponents for the global bound, p1=q1=r1=3/eps from t0/2,
// 1/q = 1/2 - eps at zero, limiting exponents (H-1/2)^{-1}, inf, (3/2-H)^{-1}.
HolderOptions fbm_holder_options(const FBmSpec& f, double eps = 0.1, double t0 = 0.5);

enum class Scheme { midpoint, leftpoint };
std::string to_string(Scheme s);

struct SimulationConfig {
  std::size_t n_steps = 512;
  std::size_t n_paths = 1;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::midpoint;
  unsigned threads = 0;  // 0: hardware concurrency; results do not depend on it

  void validate() const;
};

using Matrix = std::vector<std::vector<double>>;

struct PathSet {
  double T = 1.0;
  std::size_t n_steps = 0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::midpoint;
  std::string kernel;
  Matrix dW;  // n_paths x n_steps
  Matrix X;   // n_paths x (n_steps + 1)

  double step() const { return T / static_cast<double>(n_steps); }
  // Sample variance of all dW entries minus step, in standard errors.
  double increment_variance_z() const;
};

// Independent 64-bit seed for stream `index` derived from a base seed.
std::uint64_t stream_seed(std::uint64_t seed, std::size_t index);

// Per-path N(0, step) increments; path k draws from its own stream seeded by (seed, k).
Matrix wiener_increments(std::size_t n_paths, std::size_t n_steps, double T, std::uint64_t seed, unsigned threads = 0);
// Sums groups of `factor` consecutive increments.
Matrix coarsen(const Matrix& dW, std::size_t factor);

// X_i = sum_{j<i} K(t_i, s_j*) dW_j
Matrix kernel_matrix(const KernelTriple& kt, std::size_t n, Scheme scheme, unsigned threads = 0);
PathSet simulate(const KernelTriple& kt, const SimulationConfig& cfg);
PathSet simulate_with(const KernelTriple& kt, Matrix dW, const SimulationConfig& cfg);

double covariance(const KernelTriple& kt, double t1, double t2);

void check_K2(const KernelTriple& kt);

GridFunction op_J(const KernelTriple& kt, const GridFunction& f);
GridFunction op_Jstar(const KernelTriple& kt, const GridFunction& g);
GridFunction op_L(const KernelTriple& kt, const GridFunction& f);
GridFunction op_Lstar(const KernelTriple& kt, const GridFunction& g);

// Discrete C^k gate: max over nodes i >= 1 of |(k+1)-th difference| / step.
double ck_roughness(const std::vector<double>& v, double step, int k);
inline constexpr double kCkThreshold = 1e6;

struct K3Report {
  bool ok = false;
  double a_inv_c1 = 0.0;
  double b_inv_c2 = 0.0;
  bool d_vanishes = false;        // d(0) = d'(0) = 0 for d = 1/b
  double a_inv2_h_c1 = 0.0;       // alternative: a^{-2} h in C^1
  std::string reason;
};
K3Report check_K3(const KernelTriple& kt, std::size_t n);

struct PreimageResult {
  GridFunction mu_survival;  // mu([t, T])
  double residual = 0.0;     // max |int_0^t J J* mu_survival - f|
};
PreimageResult covariance_preimage(const KernelTriple& kt, const GridFunction& f);

// w[i][j], j < i: cell average of k(t_i, .) over [s_j, s_{j+1}]
Matrix inversion_weights(const KernelTriple& kt, std::size_t n, unsigned threads = 0);
// W_hat[path][i] = sum_{j<i} w[i][j] (X_{j+1} - X_j)
Matrix invert(const KernelTriple& kt, const PathSet& paths, unsigned threads = 0);
// E(W_hat_T - W_T)^2 of the discrete model (simulation scheme + inversion weights)
double inversion_mse_at_T(const KernelTriple& kt, std::size_t n, Scheme scheme = Scheme::midpoint);

// Y_T = int (T-u)^{1/2-H} u^{1/2-H} dX_u versus d_H B(3/2-H, H-1/2) int s^{1/2-H} dW_s, per path
struct IntermediateIdentity {
  std::vector<double> lhs, rhs;
  double max_abs_diff = 0.0;
  double rms_diff = 0.0;
};
IntermediateIdentity fbm_intermediate_identity(const FBmSpec& f, const PathSet& paths);

}  // namespace gvp
