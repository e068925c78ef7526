#include "gvp/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gvp/battery.h"
#include "gvp/errors.h"
#include "gvp/io.h"
#include "gvp/process.h"
#include "gvp/regularity.h"
#include "gvp/sonine.h"
#include "gvp/specfun.h"
#include "gvp/volterra.h"

namespace gvp {

namespace {

namespace fs = std::filesystem;

// Reads flat key-value files (TOML/INI) and JSON objects; nested JSON objects map to
// subcommand sections, keys starting with '_' are metadata and skipped.
class KeyValueOrJsonConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream is(text);
      return CLI::ConfigTOML::from_config(is);
    }
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw CLI::ConversionError("config", e.what());
    }
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

 private:
  static void flatten(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (!key.empty() && key[0] == '_') continue;
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        CLI::ConfigItem open;
        open.parents = p;
        open.name = "++";
        items.push_back(open);
        flatten(value, p, items);
        CLI::ConfigItem close;
        close.parents = p;
        close.name = "--";
        items.push_back(close);
        continue;
      }
      CLI::ConfigItem it;
      it.parents = parents;
      it.name = key;
      if (value.is_array())
        for (const auto& v : value) it.inputs.push_back(scalar(v));
      else
        it.inputs.push_back(scalar(value));
      items.push_back(it);
    }
  }

  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) {
      std::ostringstream os;
      os.precision(17);
      os << v.get<double>();
      return os.str();
    }
    return v.dump();
  }
};

json scalar_json(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  return s;
}

// The resolved configuration of the invoked command chain as nested JSON.
json resolved_config(const CLI::App& app, const std::vector<std::string>& chain) {
  std::istringstream is(app.config_to_str(true, false));
  const auto items = CLI::ConfigINI().from_config(is);
  json root = json::object();
  for (const auto& it : items) {
    if (it.name == "++" || it.name == "--") continue;
    std::vector<std::string> parents = it.parents;
    std::string name = it.name;
    for (std::size_t pos; (pos = name.find('.')) != std::string::npos;) {
      parents.push_back(name.substr(0, pos));
      name = name.substr(pos + 1);
    }
    if (parents.size() > chain.size() || !std::equal(parents.begin(), parents.end(), chain.begin())) continue;
    json* node = &root;
    for (const auto& p : parents) node = &(*node)[p];
    if (it.inputs.empty() || (it.inputs.size() == 1 && (it.inputs[0].empty() || it.inputs[0] == "\"\""))) continue;
    if (it.inputs.size() == 1) {
      (*node)[name] = scalar_json(it.inputs[0]);
    } else {
      json arr = json::array();
      for (const auto& s : it.inputs) arr.push_back(scalar_json(s));
      (*node)[name] = arr;
    }
  }
  json* node = &root;
  for (const auto& p : chain) {
    if (!node->contains(p)) (*node)[p] = json::object();
    node = &(*node)[p];
  }
  return root;
}

struct Global {
  unsigned threads = 0;
  std::string out = "gvp_out";
  std::uint64_t seed = 0;
};

struct KernelOpts {
  std::string kernel = "fbm";
  double hurst = 0.7;
  double eps = 0.1;
  double T = 1.0;
  std::string spec;
};

void add_kernel_options(CLI::App* sub, KernelOpts& k, bool allow_wiener) {
  std::vector<std::string> kinds = {"fbm", "triple"};
  if (allow_wiener) kinds.push_back("wiener");
  sub->add_option("kernel", k.kernel, "kernel preset")->check(CLI::IsMember(kinds))->capture_default_str();
  sub->add_option("--hurst", k.hurst, "Hurst index H in (1/2, 1) for the fbm preset");
  sub->add_option("--eps", k.eps, "epsilon of the fBm integrability exponents");
  sub->add_option("--T", k.T, "horizon");
  sub->add_option("--spec", k.spec, "JSON triple spec file (kernel = triple)");
}

struct Kernel {
  KernelTriple kt;
  std::optional<FBmSpec> fbm;
};

Kernel build_kernel(const KernelOpts& k) {
  Kernel out;
  if (k.kernel == "fbm") {
    out.fbm.emplace(k.hurst, k.T);
    out.kt = out.fbm->triple(k.eps);
  } else if (k.kernel == "wiener") {
    out.kt = KernelTriple::wiener_process(k.T);
  } else {
    if (k.spec.empty()) throw config_error("kernel 'triple' needs --spec FILE");
    out.kt = read_triple_file(k.spec);
  }
  return out;
}

Scheme parse_scheme(const std::string& s) { return s == "leftpoint" ? Scheme::leftpoint : Scheme::midpoint; }

std::string path_in(const Global& g, const std::string& name) { return (fs::path(g.out) / name).string(); }

void prepare_out(const Global& g) {
  std::error_code ec;
  fs::create_directories(g.out, ec);
  if (ec) throw config_error("cannot create output directory " + g.out + ": " + ec.message());
}

template <class F>
void write_file(const std::string& path, F&& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("cannot write " + path);
  writer(os);
  if (!os) throw config_error("write failed: " + path);
}

double sample_corr(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    syy += y[k] * y[k];
    sxy += x[k] * y[k];
  }
  const double c = sxy / n - sx * sy / (n * n);
  const double v = (sxx / n - sx * sx / (n * n)) * (syy / n - sy * sy / (n * n));
  return v > 0.0 ? c / std::sqrt(v) : std::nan("");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian Volterra processes, Sonine pairs and fractional calculus", "gvp"};
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  app.config_formatter(std::make_shared<KeyValueOrJsonConfig>());
  app.set_config("--config", "", "flat key-value or JSON config file (a manifest.json replays a run)");
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  app.require_subcommand(1);

  Global g;
  app.add_option("--threads", g.threads, "worker threads (0: hardware); results do not depend on it");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--seed", g.seed, "random seed");

  KernelOpts sim_k;
  std::size_t sim_steps = 512, sim_paths = 1;
  std::string sim_scheme = "midpoint";
  auto* sim = app.add_subcommand("simulate", "simulate paths X = int K dW")->configurable();
  add_kernel_options(sim, sim_k, true);
  sim->add_option("--steps", sim_steps, "grid cells");
  sim->add_option("--paths", sim_paths, "number of paths");
  sim->add_option("--scheme", sim_scheme, "kernel evaluation point")->check(CLI::IsMember({"midpoint", "leftpoint"}));

  auto* son = app.add_subcommand("sonine", "Sonine pair verification and synthesis")->configurable();
  son->require_subcommand(1);
  std::string v_pair = "coshcos";
  double v_alpha = 0.3, v_A = euler_gamma, v_nu = 0.5, v_beta = -1.0, v_T = 1.0;
  std::size_t v_n = 4096;
  auto* ver = son->add_subcommand("verify", "max |(c*h)(t) - 1| over the grid")->configurable();
  ver->add_option("--pair", v_pair, "pair name")->check(CLI::IsMember({"power", "log", "bessel", "coshcos", "exp_power"}));
  ver->add_option("--alpha", v_alpha, "order for power, log and exp_power pairs");
  ver->add_option("--A", v_A, "log pair constant");
  ver->add_option("--nu", v_nu, "Bessel pair order");
  ver->add_option("--beta", v_beta, "exp_power rate");
  ver->add_option("--n", v_n, "grid cells");
  ver->add_option("--T", v_T, "horizon");
  double s_alpha = 0.6, s_beta = -1.0, s_T = 1.0;
  std::size_t s_n = 2048;
  std::string s_rule = "trapezoid";
  auto* sol = son->add_subcommand("solve", "synthesize the partner of exp(beta x) x^{alpha-1}/Gamma(alpha)")->configurable();
  sol->add_option("--alpha", s_alpha, "order in (0,1)");
  sol->add_option("--beta", s_beta, "exponential rate");
  sol->add_option("--T", s_T, "horizon");
  sol->add_option("--n", s_n, "grid cells");
  sol->add_option("--rule", s_rule, "second-kind rule")->check(CLI::IsMember({"trapezoid", "leftpoint"}));

  KernelOpts inv_k;
  std::size_t inv_steps = 2048, inv_paths = 500;
  std::string inv_scheme = "midpoint";
  auto* inv = app.add_subcommand("invert", "simulate, then recover W from X")->configurable();
  add_kernel_options(inv, inv_k, false);
  inv->add_option("--steps", inv_steps, "grid cells");
  inv->add_option("--paths", inv_paths, "number of paths");
  inv->add_option("--scheme", inv_scheme, "simulation scheme")->check(CLI::IsMember({"midpoint", "leftpoint"}));

  KernelOpts hol_k;
  std::size_t hol_steps = 2048, hol_paths = 200, hol_resamples = 200;
  double hol_window = 0.0, hol_t0 = 0.5;
  std::vector<std::size_t> hol_lags;
  auto* hol = app.add_subcommand("holder", "empirical Hoelder exponent vs predictions")->configurable();
  add_kernel_options(hol, hol_k, true);
  hol->add_option("--steps", hol_steps, "grid cells");
  hol->add_option("--paths", hol_paths, "number of paths");
  hol->add_option("--resamples", hol_resamples, "bootstrap resamples");
  hol->add_option("--window", hol_window, "use nodes with t >= window");
  hol->add_option("--lags", hol_lags, "variogram lags (default 1,2,...,32)");
  hol->add_option("--t0", hol_t0, "start of the interior prediction interval");

  KernelOpts kc_k;
  std::size_t kc_pairs = 5;
  double kc_t0 = 0.5;
  auto* kc = app.add_subcommand("kernel-check", "admissibility, predicted exponents, constancy identity")->configurable();
  add_kernel_options(kc, kc_k, true);
  kc->add_option("--pairs", kc_pairs, "random (s,t) pairs for the constancy check");
  kc->add_option("--t0", kc_t0, "start of the interior prediction interval");

  double ft_alpha = 0.5;
  std::size_t ft_n = 1024;
  auto* ft = app.add_subcommand("frac-test", "fractional-calculus property battery")->configurable();
  ft->add_option("--alpha", ft_alpha, "order in (0,1)");
  ft->add_option("--n", ft_n, "grid cells");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }

  std::vector<std::string> chain;
  for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    chain.push_back(a->get_name());
  }
  json manifest = resolved_config(app, chain);
  std::vector<std::string> files;
  auto finish = [&](const json& summary) {
    files.push_back("manifest.json");
    json m = manifest;
    std::string cmd;
    for (const auto& c : chain) cmd += (cmd.empty() ? "" : " ") + c;
    m["_manifest"] = {{"command", cmd}, {"files", files}};
    write_json_file(path_in(g, "manifest.json"), m);
    out << summary.dump(2) << "\n";
  };

  try {
    if (sim->parsed()) {
      const Kernel k = build_kernel(sim_k);
      SimulationConfig cfg;
      cfg.n_steps = sim_steps;
      cfg.n_paths = sim_paths;
      cfg.seed = g.seed;
      cfg.scheme = parse_scheme(sim_scheme);
      cfg.threads = g.threads;
      const PathSet ps = simulate(k.kt, cfg);
      prepare_out(g);
      write_file(path_in(g, "paths.csv"), [&](std::ostream& os) { write_paths_csv(os, ps); });
      write_file(path_in(g, "increments.csv"), [&](std::ostream& os) { write_increments_csv(os, ps); });
      write_json_file(path_in(g, "paths.json"), sidecar(ps, to_json(k.kt)));
      files = {"paths.csv", "increments.csv", "paths.json"};
      finish({{"command", "simulate"},
              {"n_steps", ps.n_steps},
              {"n_paths", ps.n_paths},
              {"increment_variance_z", ps.increment_variance_z()},
              {"admissibility", to_json(admissibility(k.kt))}});
    } else if (ver->parsed()) {
      SoninePair p;
      if (v_pair == "power")
        p = power_pair(v_alpha, v_T);
      else if (v_pair == "log")
        p = log_pair(v_alpha, v_A, v_T);
      else if (v_pair == "bessel")
        p = bessel_pair(v_nu, v_T);
      else if (v_pair == "coshcos")
        p = coshcos_pair(v_T);
      else
        p = exp_power_pair(v_alpha, v_beta, v_T, v_n);
      const IdentityReport r = verify_identity(p, v_n);
      json j = to_json(r);
      j["warnings"] = p.warnings;
      prepare_out(g);
      write_json_file(path_in(g, "sonine_verify.json"), j);
      files = {"sonine_verify.json"};
      finish(j);
    } else if (sol->parsed()) {
      const FirstKindProblem problem = exp_power_problem(FracOrder(s_alpha), s_beta, s_T, s_n);
      const FirstKindResult res =
          solve_first_kind(problem, s_rule == "leftpoint" ? SecondKindRule::leftpoint : SecondKindRule::trapezoid);
      const PositivityCertificate cert = positivity_certificate(problem, res.f);
      const SingularKernelSpec gk = *problem.g;
      const GridFunction gg = gk.on_grid(0.0, s_T, s_n);
      json j = {{"alpha", s_alpha},
                {"beta", s_beta},
                {"T", s_T},
                {"n", s_n},
                {"defect", res.defect},
                {"second_kind_residual", res.F.residual},
                {"positivity", cert.granted},
                {"hypotheses_hold", cert.hypotheses_hold},
                {"failed_hypotheses", cert.failed},
                {"min_f", cert.min_f},
                {"c_left_exponent", gg.left_exponent},
                {"h_left_exponent", res.f.left_exponent}};
      prepare_out(g);
      write_file(path_in(g, "sonine_pair.csv"), [&](std::ostream& os) {
        os << "x,c,h\n";
        char buf[96];
        for (std::size_t i = 0; i <= s_n; ++i) {
          std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", res.f.node(i), gg.values[i], res.f.values[i]);
          os << buf;
        }
      });
      write_json_file(path_in(g, "sonine_solve.json"), j);
      files = {"sonine_pair.csv", "sonine_solve.json"};
      finish(j);
    } else if (inv->parsed()) {
      const Kernel k = build_kernel(inv_k);
      SimulationConfig cfg;
      cfg.n_steps = inv_steps;
      cfg.n_paths = inv_paths;
      cfg.seed = g.seed;
      cfg.scheme = parse_scheme(inv_scheme);
      cfg.threads = g.threads;
      const PathSet ps = simulate(k.kt, cfg);
      const Matrix W = invert(k.kt, ps, g.threads);
      std::vector<double> what, wt;
      double mse = 0.0;
      for (std::size_t p = 0; p < ps.n_paths; ++p) {
        double s = 0.0;
        for (double d : ps.dW[p]) s += d;
        what.push_back(W[p][ps.n_steps]);
        wt.push_back(s);
        mse += (W[p][ps.n_steps] - s) * (W[p][ps.n_steps] - s);
      }
      mse /= static_cast<double>(ps.n_paths);
      json j = {{"kernel", to_json(k.kt)},
                {"n_steps", ps.n_steps},
                {"n_paths", ps.n_paths},
                {"seed", g.seed},
                {"scheme", to_string(ps.scheme)},
                {"corr", number(sample_corr(what, wt))},
                {"mse_T", mse},
                {"mse_T_model", inversion_mse_at_T(k.kt, ps.n_steps, ps.scheme)}};
      prepare_out(g);
      write_file(path_in(g, "recovered.csv"), [&](std::ostream& os) { write_matrix_csv(os, W, ps.step(), false); });
      write_json_file(path_in(g, "invert.json"), j);
      files = {"recovered.csv", "invert.json"};
      finish(j);
    } else if (hol->parsed()) {
      const Kernel k = build_kernel(hol_k);
      SimulationConfig cfg;
      cfg.n_steps = hol_steps;
      cfg.n_paths = hol_paths;
      cfg.seed = g.seed;
      cfg.threads = g.threads;
      const PathSet ps = simulate(k.kt, cfg);
      EstimateOptions eo;
      eo.lags = hol_lags;
      eo.resamples = hol_resamples;
      eo.seed = stream_seed(g.seed, 1);
      eo.window_start = hol_window;
      eo.threads = g.threads;
      HolderReport r = estimate_holder(ps, eo);
      r.predicted = holder_predict(k.kt, k.fbm ? fbm_holder_options(*k.fbm, hol_k.eps, hol_t0) : HolderOptions{});
      json j = to_json(r);
      j["kernel"] = to_json(k.kt);
      prepare_out(g);
      write_json_file(path_in(g, "holder.json"), j);
      files = {"holder.json"};
      finish(j);
    } else if (kc->parsed()) {
      const Kernel k = build_kernel(kc_k);
      const Admissibility adm = admissibility(k.kt);
      json j = {{"kernel", to_json(k.kt)}, {"admissibility", to_json(adm)}};
      j["predicted_exponents"] =
          to_json(holder_predict(k.kt, k.fbm ? fbm_holder_options(*k.fbm, kc_k.eps, kc_t0) : HolderOptions{}));
      if (k.fbm) {
        std::mt19937_64 rng(g.seed);
        std::uniform_real_distribution<double> u(0.0, k.kt.T);
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < kc_pairs; ++i) {
          double s = u(rng), t = u(rng);
          if (s > t) std::swap(s, t);
          if (t - s < 1e-6) t = std::min(k.kt.T, s + 1e-3);
          pairs.emplace_back(s, t);
        }
        const auto c = fbm_constancy_check(k.fbm->H, pairs);
        double worst = 0.0, lo = INFINITY, hi = -INFINITY;
        for (const auto& x : c) {
          worst = std::max(worst, std::abs(x.residual));
          lo = std::min(lo, x.value);
          hi = std::max(hi, x.value);
        }
        j["constancy"] = to_json(c);
        j["constancy_target"] = beta(1.5 - k.fbm->H, k.fbm->H - 0.5);
        j["max_constancy_residual"] = worst;
        j["constancy_spread"] = c.empty() ? 0.0 : hi - lo;
      } else {
        j["constancy"] = nullptr;
      }
      prepare_out(g);
      write_json_file(path_in(g, "kernel_check.json"), j);
      files = {"kernel_check.json"};
      finish(j);
      if (adm.verdict == Verdict::rejected) {
        err << "admissibility rejected: " << adm.reason << "\n";
        return exit_admissibility;
      }
    } else if (ft->parsed()) {
      const BatteryReport r = frac_battery(ft_alpha, ft_n, g.seed);
      prepare_out(g);
      write_json_file(path_in(g, "frac_test.json"), to_json(r));
      files = {"frac_test.json"};
      finish(to_json(r));
      if (!r.all_pass) {
        err << "fractional-calculus battery: some residuals exceed their thresholds\n";
        return exit_numerical;
      }
    }
  } catch (const admissibility_error& e) {
    err << "admissibility rejected: " << e.what() << "\n";
    return exit_admissibility;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  } catch (const config_error& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
  return exit_ok;
}

}  // namespace gvp
