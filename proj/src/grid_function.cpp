#include "gvp/grid_function.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "gvp/errors.h"

namespace gvp {

double clean_exponent(double e) { return std::abs(e) < 1e-12 ? 0.0 : e; }

GridFunction::GridFunction(double t0_, double t1_, std::size_t n_, std::vector<double> v, double sl, double sr)
    : t0(t0_), t1(t1_), n(n_), values(std::move(v)), left_exponent(clean_exponent(sl)),
      right_exponent(clean_exponent(sr)) {
  validate();
}

double GridFunction::node(std::size_t i) const {
  if (i == n) return t1;
  return t0 + static_cast<double>(i) * step();
}

void GridFunction::validate() const {
  if (n < 1) throw config_error("GridFunction: n must be positive");
  if (!(t1 > t0)) throw config_error("GridFunction: need t1 > t0");
  if (values.size() != n + 1) throw config_error("GridFunction: values must have n+1 entries");
  for (double v : values)
    if (!std::isfinite(v)) throw numerical_error("GridFunction: non-finite value");
  if (!std::isfinite(left_exponent) || !std::isfinite(right_exponent))
    throw config_error("GridFunction: non-finite endpoint exponent");
}

bool GridFunction::same_grid(const GridFunction& o) const {
  return n == o.n && t0 == o.t0 && t1 == o.t1;
}

namespace {

double extrapolate(double r1, double r2, double r3) { return 3.0 * r1 - 3.0 * r2 + r3; }

}  // namespace

std::vector<double> GridFunction::regular() const {
  const double L = length();
  std::vector<double> r(n + 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = node(i) - t0;
    double v = values[i];
    if (left_exponent != 0.0) v *= std::pow(x, left_exponent);
    if (right_exponent != 0.0) v *= std::pow(L - x, right_exponent);
    r[i] = v;
  }
  auto end_value = [&](std::size_t i, double own, double other) {
    if (own < 0.0) {
      if (n >= 4)
        return i == 0 ? extrapolate(r[1], r[2], r[3]) : extrapolate(r[n - 1], r[n - 2], r[n - 3]);
      if (n >= 3) return i == 0 ? 2.0 * r[1] - r[2] : 2.0 * r[n - 1] - r[n - 2];
      return i == 0 ? r[1] : r[n - 1];
    }
    return other != 0.0 ? values[i] * std::pow(L, other) : values[i];
  };
  r[0] = end_value(0, left_exponent, right_exponent);
  r[n] = end_value(n, right_exponent, left_exponent);
  return r;
}

GridFunction GridFunction::from_regular(double t0, double t1, std::size_t n, std::vector<double> r, double sl,
                                        double sr) {
  sl = clean_exponent(sl);
  sr = clean_exponent(sr);
  const double L = t1 - t0;
  std::vector<double> v(n + 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = (i == n ? L : L * static_cast<double>(i) / static_cast<double>(n));
    double f = r[i];
    if (sl != 0.0) f *= std::pow(x, -sl);
    if (sr != 0.0) f *= std::pow(L - x, -sr);
    v[i] = f;
  }
  v[0] = sl < 0.0 ? 0.0 : (sr != 0.0 ? r[0] * std::pow(L, -sr) : r[0]);
  v[n] = sr < 0.0 ? 0.0 : (sl != 0.0 ? r[n] * std::pow(L, -sl) : r[n]);
  return GridFunction(t0, t1, n, std::move(v), sl, sr);
}

GridFunction GridFunction::sample(const std::function<double(double)>& f, double t0, double t1, std::size_t n) {
  std::vector<double> v(n + 1);
  GridFunction g;
  g.t0 = t0;
  g.t1 = t1;
  g.n = n;
  for (std::size_t i = 0; i <= n; ++i) v[i] = f(g.node(i));
  return GridFunction(t0, t1, n, std::move(v));
}

GridFunction GridFunction::sample_regular(const std::function<double(double)>& r, double t0, double t1, std::size_t n,
                                          double sl, double sr) {
  std::vector<double> rv(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    rv[i] = r(i == n ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n));
  return from_regular(t0, t1, n, std::move(rv), sl, sr);
}

GridFunction GridFunction::zeros(double t0, double t1, std::size_t n) {
  return GridFunction(t0, t1, n, std::vector<double>(n + 1, 0.0));
}

GridFunction GridFunction::reversed() const {
  std::vector<double> v(values.rbegin(), values.rend());
  return GridFunction(t0, t1, n, std::move(v), right_exponent, left_exponent);
}

namespace {

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!f.same_grid(g)) throw config_error("GridFunction: grids differ");
}

GridFunction combine(const GridFunction& f, const GridFunction& g, double sign) {
  require_same_grid(f, g);
  const double sl = std::max(f.left_exponent, g.left_exponent);
  const double sr = std::max(f.right_exponent, g.right_exponent);
  const auto rf = f.regular();
  const auto rg = g.regular();
  const double L = f.length();
  std::vector<double> r(f.n + 1);
  for (std::size_t i = 0; i <= f.n; ++i) {
    const double x = L * static_cast<double>(i) / static_cast<double>(f.n);
    auto lift = [&](double v, const GridFunction& h) {
      const double dl = sl - h.left_exponent, dr = sr - h.right_exponent;
      if (dl != 0.0) v *= std::pow(x, dl);
      if (dr != 0.0) v *= std::pow(L - x, dr);
      return v;
    };
    r[i] = lift(rf[i], f) + sign * lift(rg[i], g);
  }
  return GridFunction::from_regular(f.t0, f.t1, f.n, std::move(r), sl, sr);
}

}  // namespace

GridFunction operator+(const GridFunction& f, const GridFunction& g) { return combine(f, g, 1.0); }
GridFunction operator-(const GridFunction& f, const GridFunction& g) { return combine(f, g, -1.0); }

GridFunction operator*(double c, const GridFunction& f) {
  GridFunction out = f;
  for (double& v : out.values) v *= c;
  return out;
}

GridFunction operator*(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  auto r = f.regular();
  const auto rg = g.regular();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= rg[i];
  return GridFunction::from_regular(f.t0, f.t1, f.n, std::move(r), f.left_exponent + g.left_exponent,
                                    f.right_exponent + g.right_exponent);
}

GridFunction mul_power(const GridFunction& f, double coef, double e) {
  auto r = f.regular();
  for (double& v : r) v *= coef;
  return GridFunction::from_regular(f.t0, f.t1, f.n, std::move(r), f.left_exponent - e, f.right_exponent);
}

GridFunction mul_smooth(const GridFunction& f, const std::function<double(double)>& m) {
  auto r = f.regular();
  for (std::size_t i = 0; i <= f.n; ++i) r[i] *= m(f.node(i));
  return GridFunction::from_regular(f.t0, f.t1, f.n, std::move(r), f.left_exponent, f.right_exponent);
}

GridFunction derivative(const GridFunction& f) {
  const std::size_t n = f.n;
  if (n < 2) throw config_error("derivative: need n >= 2");
  const double h = f.step(), L = f.length();
  const auto r = f.regular();
  std::vector<double> dr(n + 1);
  for (std::size_t i = 1; i < n; ++i) dr[i] = (r[i + 1] - r[i - 1]) / (2.0 * h);
  dr[0] = (-3.0 * r[0] + 4.0 * r[1] - r[2]) / (2.0 * h);
  dr[n] = (3.0 * r[n] - 4.0 * r[n - 1] + r[n - 2]) / (2.0 * h);
  const double sl = f.left_exponent, sr = f.right_exponent;
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = L * static_cast<double>(i) / static_cast<double>(n);
    const double y = L - x;
    if (sl != 0.0 && sr != 0.0)
      out[i] = x * y * dr[i] - sl * y * r[i] + sr * x * r[i];
    else if (sl != 0.0)
      out[i] = x * dr[i] - sl * r[i];
    else if (sr != 0.0)
      out[i] = y * dr[i] + sr * r[i];
    else
      out[i] = dr[i];
  }
  return GridFunction::from_regular(f.t0, f.t1, n, std::move(out), sl != 0.0 ? sl + 1.0 : 0.0,
                                    sr != 0.0 ? sr + 1.0 : 0.0);
}

double max_abs(const GridFunction& f, std::size_t lo, std::size_t hi) {
  hi = std::min(hi, f.n);
  double m = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    if ((i == 0 && f.left_exponent > 0.0) || (i == f.n && f.right_exponent > 0.0)) continue;
    m = std::max(m, std::abs(f.values[i]));
  }
  return m;
}

double max_abs_diff(const GridFunction& f, const GridFunction& g, std::size_t lo, std::size_t hi) {
  require_same_grid(f, g);
  hi = std::min(hi, f.n);
  double m = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const bool sing = (i == 0 && (f.left_exponent > 0.0 || g.left_exponent > 0.0)) ||
                      (i == f.n && (f.right_exponent > 0.0 || g.right_exponent > 0.0));
    if (sing) continue;
    m = std::max(m, std::abs(f.values[i] - g.values[i]));
  }
  return m;
}

void write_csv(std::ostream& os, const GridFunction& f) {
  os << std::setprecision(17);
  os << "# t0=" << f.t0 << " t1=" << f.t1 << " n=" << f.n;
  if (f.left_exponent != 0.0) os << " left_exponent=" << f.left_exponent;
  if (f.right_exponent != 0.0) os << " right_exponent=" << f.right_exponent;
  os << "\n";
  for (std::size_t i = 0; i <= f.n; ++i) os << f.node(i) << "," << f.values[i] << "\n";
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("#", 0) != 0) throw config_error("read_csv: missing '# t0=... ' header");
  std::map<std::string, double> kv;
  std::istringstream hs(line.substr(1));
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw config_error("read_csv: bad header token " + tok);
    kv[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
  }
  for (const char* k : {"t0", "t1", "n"})
    if (!kv.count(k)) throw config_error(std::string("read_csv: header lacks ") + k);
  const auto n = static_cast<std::size_t>(kv["n"]);
  std::vector<double> v;
  v.reserve(n + 1);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw config_error("read_csv: expected node,value");
    v.push_back(std::stod(line.substr(comma + 1)));
  }
  return GridFunction(kv["t0"], kv["t1"], n, std::move(v), kv.count("left_exponent") ? kv["left_exponent"] : 0.0,
                      kv.count("right_exponent") ? kv["right_exponent"] : 0.0);
}

void write_csv_file(const std::string& path, const GridFunction& f) {
  std::ofstream os(path);
  if (!os) throw config_error("cannot write " + path);
  write_csv(os, f);
}

GridFunction read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot read " + path);
  return read_csv(is);
}

}  // namespace gvp
