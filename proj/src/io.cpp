#include "gvp/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "gvp/errors.h"

namespace gvp {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

PowerLaw power_from_json(const json& j, const char* name) {
  if (!j.is_object()) throw config_error(std::string("triple: '") + name + "' must be an object {coef, exponent}");
  return {to_double(j.value("coef", json(1.0))), to_double(j.value("exponent", json(0.0)))};
}

}  // namespace

json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double to_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw config_error("expected a number, got " + j.dump());
}

json to_json(const PowerLaw& f) { return {{"coef", number(f.coef)}, {"exponent", number(f.exponent)}}; }

json to_json(const KernelTriple& kt) {
  if (kt.wiener) return {{"wiener", true}, {"T", kt.T}, {"label", kt.label}};
  json j = {{"a", to_json(kt.a)}, {"b", to_json(kt.b)}, {"c", to_json(kt.c)}, {"p", number(kt.p)},
            {"q", number(kt.q)}, {"r", number(kt.r)}, {"T", kt.T},       {"label", kt.label}};
  if (kt.pair) j["pair"] = kt.pair->name();
  return j;
}

KernelTriple triple_from_json(const json& j) {
  if (!j.is_object()) throw config_error("triple spec must be a JSON object");
  const double T = to_double(j.value("T", json(1.0)));
  if (j.value("wiener", false)) return KernelTriple::wiener_process(T);
  for (const char* k : {"a", "b", "c", "p", "q", "r"})
    if (!j.contains(k)) throw config_error(std::string("triple spec lacks '") + k + "'");
  KernelTriple kt;
  kt.a = power_from_json(j["a"], "a");
  kt.b = power_from_json(j["b"], "b");
  kt.c = power_from_json(j["c"], "c");
  kt.p = to_double(j["p"]);
  kt.q = to_double(j["q"]);
  kt.r = to_double(j["r"]);
  kt.T = T;
  kt.label = j.value("label", std::string("triple"));
  kt.validate();
  if (kt.c.exponent < 0.0 && kt.c.exponent > -1.0) kt.with_power_partner();
  return kt;
}

KernelTriple read_triple_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot read triple spec " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw config_error("triple spec " + path + ": " + e.what());
  }
  return triple_from_json(j);
}

json to_json(const Admissibility& a) { return {{"verdict", to_string(a.verdict)}, {"reason", a.reason}}; }

json to_json(const HolderPrediction& hp) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"lambda_global", opt(hp.lambda_global)},
          {"lambda_interior", opt(hp.lambda_interior)},
          {"interior_from", hp.interior_from},
          {"lambda_at_zero", opt(hp.lambda_at_zero)},
          {"lambda_limit", opt(hp.lambda_limit)},
          {"assumptions_used", hp.assumptions_used},
          {"not_applicable", hp.not_applicable}};
}

json to_json(const HolderReport& r) {
  json j = {{"estimate", r.estimate},
            {"ci", {r.ci_low, r.ci_high}},
            {"lags", r.lags},
            {"variogram", r.variogram},
            {"window_start", r.window_start},
            {"resamples", r.resamples},
            {"bootstrap_seed", r.seed}};
  j["predicted_exponents"] = r.predicted ? to_json(*r.predicted) : json(nullptr);
  return j;
}

json to_json(const IdentityReport& r) {
  return {{"pair", r.pair}, {"n", r.n}, {"max_deviation", r.max_deviation}, {"nodes_checked", r.nodes_checked}};
}

json to_json(const BatteryReport& r) {
  json items = json::array();
  for (const auto& it : r.items)
    items.push_back({{"name", it.name}, {"residual", it.residual}, {"threshold", it.threshold}, {"pass", it.pass}});
  return {{"alpha", r.alpha}, {"n", r.n}, {"seed", r.seed}, {"items", items}, {"all_pass", r.all_pass}};
}

json to_json(const std::vector<ConstancyResult>& r) {
  json a = json::array();
  for (const auto& c : r) a.push_back({{"s", c.s}, {"t", c.t}, {"value", c.value}, {"residual", c.residual}});
  return a;
}

json sidecar(const PathSet& ps, const json& kernel_spec) {
  return {{"seed", ps.seed},       {"scheme", to_string(ps.scheme)}, {"n_steps", ps.n_steps},
          {"n_paths", ps.n_paths}, {"T", ps.T},                      {"kernel", kernel_spec}};
}

void write_matrix_csv(std::ostream& os, const Matrix& rows_by_path, double step, bool increments) {
  const std::size_t paths = rows_by_path.size();
  const std::size_t len = paths ? rows_by_path[0].size() : 0;
  os << (increments ? "t_start" : "t");
  for (std::size_t k = 0; k < paths; ++k) os << ",path_" << k;
  os << "\n";
  for (std::size_t i = 0; i < len; ++i) {
    os << fmt(step * static_cast<double>(i));
    for (std::size_t k = 0; k < paths; ++k) os << ',' << fmt(rows_by_path[k][i]);
    os << '\n';
  }
}

void write_paths_csv(std::ostream& os, const PathSet& ps) { write_matrix_csv(os, ps.X, ps.step(), false); }

void write_increments_csv(std::ostream& os, const PathSet& ps) { write_matrix_csv(os, ps.dW, ps.step(), true); }

PathSet read_paths_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,", 0) != 0) throw config_error("paths csv: missing 't,path_0,...' header");
  std::size_t cols = 0;
  for (char ch : line) cols += ch == ',';
  PathSet ps;
  ps.n_paths = cols;
  ps.X.assign(cols, {});
  std::vector<double> times;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    times.push_back(std::stod(cell));
    for (std::size_t k = 0; k < cols; ++k) {
      if (!std::getline(ls, cell, ',')) throw config_error("paths csv: short row");
      ps.X[k].push_back(std::stod(cell));
    }
  }
  if (times.size() < 3) throw config_error("paths csv: need at least 3 nodes");
  ps.n_steps = times.size() - 1;
  ps.T = times.back();
  return ps;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("cannot write " + path);
  os << text;
  if (!os) throw config_error("write failed: " + path);
}

void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace gvp
