#include "reports.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>

#include <json.hpp>

#include "qjump/diagnostics.hpp"
#include "qjump/errors.hpp"
#include "qjump/parallel.hpp"
#include "qjump/special_functions.hpp"
#include "qjump/trajectories.hpp"

#ifndef QJUMP_VERSION
#define QJUMP_VERSION "unknown"
#endif

namespace qjump::cli {
namespace {

struct Outcome {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

/// T f_nn by quadrature for either model.
double quadrature_tf(const ModelParams& params, double T, int n) {
  if (const auto* jcp = std::get_if<jc::JCParams>(&params)) {
    return T * jc::fmn_jc(*jcp, T, n, n).value.real();
  }
  return T * osc::fnn_integral_osc(std::get<osc::OscParams>(params), T, n, n).value.real();
}

/// Quadrature values for n in [lo, hi]; failures are kept per entry.
std::vector<Outcome> quadrature_column(const ModelParams& params, double T, int lo,
                                       int hi) {
  std::vector<Outcome> out(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(out.size(), [&](std::size_t i) {
    try {
      out[i].value = quadrature_tf(params, T, lo + static_cast<int>(i));
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

const char* method_provenance(const std::string& method) {
  if (method == "quadrature") return to_string(Provenance::quadrature);
  if (method == "exact" || method == "tricomi" || method == "small_chi_exact") {
    return to_string(Provenance::analytic_exact);
  }
  if (method == "interp" || method == "small_chi_stirling") {
    return to_string(Provenance::analytic_interp);
  }
  if (method == "steepest_descent") return to_string(Provenance::steepest_descent);
  return "unknown";
}

double analytic_tf(const std::string& method, const ModelParams& params, double T,
                   int n) {
  if (const auto* jcp = std::get_if<jc::JCParams>(&params)) {
    if (method == "exact") return T * jc::fnn_exact_jc(n, T);
    if (method == "interp") return T * jc::fnn_interp_jc(n, T, *jcp).value;
    throw InvalidConfig("method '" + method + "' is not available for the jc model");
  }
  const auto& p = std::get<osc::OscParams>(params);
  if (method == "tricomi") return 8.0 * special::tricomi_psi_3(n);
  if (method == "small_chi_exact") return T * osc::fnn_small_chi(n, T).exact;
  if (method == "small_chi_stirling") return T * osc::fnn_small_chi(n, T).stirling;
  if (method == "steepest_descent") return T * osc::fnn_steepest_descent(p, n, T).value;
  throw InvalidConfig("method '" + method + "' is not available for the osc model");
}

void check_methods(ModelTag model, const std::vector<std::string>& methods) {
  const auto known = compare_methods(model);
  for (const auto& m : methods) {
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      throw InvalidConfig("method '" + m + "' is not available for the " +
                          std::string(to_string(model)) + " model");
    }
  }
}

std::string chi_label(double chi) { return format_real(chi); }

}  // namespace

double default_tolerance(const std::string& method) {
  static const std::map<std::string, double> gates = {
      {"exact", 0.01},          {"interp", 0.05},
      {"tricomi", 1e-6},        {"small_chi_exact", 0.02},
      {"small_chi_stirling", 0.03}, {"steepest_descent", 0.05}};
  const auto it = gates.find(method);
  return it == gates.end() ? -1.0 : it->second;
}

std::vector<std::string> compare_methods(ModelTag model) {
  if (model == ModelTag::jc) return {"quadrature", "exact", "interp"};
  return {"quadrature", "tricomi", "small_chi_exact", "small_chi_stirling",
          "steepest_descent"};
}

Report cmd_coeffs(const RunConfig& cfg) {
  const NRange r = cfg.effective_n_range();
  Report rep;
  DataTable table;
  table.columns = {"model", "chi",      "lambdaT",  "m",         "n",
                   "T_fmn_re", "T_fmn_im", "T_error", "provenance"};
  for (double chi : cfg.chi) {
    const ModelParams params = make_params(cfg.model, cfg, chi);
    struct Entry {
      int m, n;
      FmnResult f;
    };
    std::vector<Entry> entries;
    for (int m = r.lo; m <= r.hi; ++m) {
      if (!cfg.full) {
        entries.push_back({m, m, {}});
        continue;
      }
      for (int n = r.lo; n <= r.hi; ++n) entries.push_back({m, n, {}});
    }
    parallel_for(entries.size(), [&](std::size_t i) {
      auto& e = entries[i];
      if (const auto* jcp = std::get_if<jc::JCParams>(&params)) {
        e.f = jc::fmn_jc(*jcp, cfg.T, e.m, e.n);
      } else {
        e.f = osc::fnn_integral_osc(std::get<osc::OscParams>(params), cfg.T, e.m, e.n);
      }
    });
    for (const auto& e : entries) {
      table.add({std::string(to_string(cfg.model)), chi, cfg.lambda_T,
                 std::int64_t{e.m}, std::int64_t{e.n}, cfg.T * e.f.value.real(),
                 cfg.T * e.f.value.imag(), cfg.T * e.f.error_estimate,
                 std::string(to_string(Provenance::quadrature))});
    }
  }
  rep.files.emplace_back("coeffs", std::move(table));
  rep.provenance.emplace_back("T_fmn", to_string(Provenance::quadrature));
  return rep;
}

Report cmd_compare(const RunConfig& cfg) {
  const NRange r = cfg.effective_n_range();
  check_methods(cfg.model, cfg.methods);
  std::vector<std::string> methods = cfg.methods.empty() ? compare_methods(cfg.model)
                                                         : cfg.methods;
  if (std::find(methods.begin(), methods.end(), "quadrature") == methods.end()) {
    methods.insert(methods.begin(), "quadrature");
  }

  Report rep;
  DataTable table;
  table.columns = {"model",  "chi",   "lambdaT",
                   "n",      "method", "T_fnn", "rel_err_vs_quadrature"};
  for (const auto& m : methods) rep.provenance.emplace_back(m, method_provenance(m));

  for (double chi : cfg.chi) {
    const ModelParams params = make_params(cfg.model, cfg, chi);
    const auto quad = quadrature_column(params, cfg.T, r.lo, r.hi);
    std::map<std::string, GateResult> gates;
    for (const auto& m : cfg.methods) {
      const double tol = cfg.tol ? *cfg.tol : default_tolerance(m);
      if (tol > 0.0) gates[m] = GateResult{m, chi, tol, 0.0, true};
    }
    for (int n = r.lo; n <= r.hi; ++n) {
      const Outcome& q = quad[static_cast<std::size_t>(n - r.lo)];
      if (!q.error.empty()) {
        rep.warnings.push_back("quadrature chi=" + chi_label(chi) +
                               " n=" + std::to_string(n) + ": " + q.error);
      }
      for (const auto& m : methods) {
        double value = q.value;
        if (m != "quadrature") {
          try {
            value = analytic_tf(m, params, cfg.T, n);
          } catch (const InvalidConfig&) {
            throw;
          } catch (const Error& e) {
            value = std::numeric_limits<double>::quiet_NaN();
            rep.warnings.push_back(m + " chi=" + chi_label(chi) +
                                   " n=" + std::to_string(n) + ": " + e.what());
          }
        }
        const double rel = (q.value - value) / q.value;
        table.add({std::string(to_string(cfg.model)), chi, cfg.lambda_T,
                   std::int64_t{n}, m, value, rel});
        if (auto it = gates.find(m); it != gates.end()) {
          auto& g = it->second;
          if (!std::isfinite(rel)) {
            g.passed = false;
            g.max_abs_rel_err = std::numeric_limits<double>::infinity();
          } else {
            g.max_abs_rel_err = std::max(g.max_abs_rel_err, std::abs(rel));
            if (std::abs(rel) >= g.tolerance) g.passed = false;
          }
        }
      }
    }
    for (auto& [name, g] : gates) {
      if (!g.passed) rep.exit_code = exit_gate_failed;
      rep.gates.push_back(g);
    }
  }
  rep.files.emplace_back("compare", std::move(table));
  return rep;
}

Report cmd_figures(const RunConfig& cfg) {
  const NRange r = cfg.effective_n_range();
  const std::vector<double> fig1 = {0.1, 0.3, 0.5, 0.8, 1.1};
  const std::vector<double> fig2 = {5, 10, 20, 40, 70};
  const std::vector<double> fig3 = {0.5, 1.1, 2, 3, 4};

  std::map<double, std::vector<Outcome>> cache;
  auto numeric = [&](double chi) -> const std::vector<Outcome>& {
    auto it = cache.find(chi);
    if (it == cache.end()) {
      const ModelParams params = make_params(ModelTag::oscillator, cfg, chi);
      it = cache.emplace(chi, quadrature_column(params, cfg.T, r.lo, r.hi)).first;
    }
    return it->second;
  };

  Report rep;
  auto family = [&](const std::vector<double>& chis) {
    DataTable t;
    t.columns = {"chi", "n", "T_fnn_numeric", "error"};
    for (double chi : chis) {
      const auto& col = numeric(chi);
      for (int n = r.lo; n <= r.hi; ++n) {
        const auto& o = col[static_cast<std::size_t>(n - r.lo)];
        t.add({chi, std::int64_t{n}, o.value, o.error});
      }
    }
    return t;
  };
  rep.files.emplace_back("fig1.csv", family(fig1));
  rep.files.emplace_back("fig2.csv", family(fig2));

  DataTable t3;
  t3.columns = {"chi", "n", "T_fnn_numeric", "T_fnn_analytic", "rel_err", "error"};
  for (double chi : fig3) {
    const auto& col = numeric(chi);
    const auto params = std::get<osc::OscParams>(make_params(ModelTag::oscillator, cfg, chi));
    for (int n = r.lo; n <= r.hi; ++n) {
      const auto& o = col[static_cast<std::size_t>(n - r.lo)];
      std::string error = o.error;
      double analytic = std::numeric_limits<double>::quiet_NaN();
      try {
        analytic = cfg.T * osc::fnn_steepest_descent(params, n, cfg.T).value;
      } catch (const Error& e) {
        error += (error.empty() ? "" : "; ") + std::string(e.what());
      }
      t3.add({chi, std::int64_t{n}, o.value, analytic, (o.value - analytic) / o.value,
              error});
    }
  }
  rep.files.emplace_back("fig3.csv", std::move(t3));
  rep.provenance = {{"T_fnn_numeric", to_string(Provenance::quadrature)},
                    {"T_fnn_analytic", to_string(Provenance::steepest_descent)}};
  return rep;
}

Report cmd_traject(const RunConfig& cfg) {
  const NRange r = cfg.effective_n_range();
  Report rep;
  DataTable table;
  table.columns = {"model",          "chi",    "n",
                   "n_traj",         "empirical_T_fnn", "stderr",
                   "reference_T_fnn", "z_score"};
  for (double chi : cfg.chi) {
    const ModelParams params = make_params(cfg.model, cfg, chi);
    for (int n = r.lo; n <= r.hi; ++n) {
      traj::TrajectoryConfig tc{params,
                                cfg.T,
                                fock::DensityMatrix::fock_projector(n + 2, n),
                                cfg.n_traj,
                                cfg.seed,
                                4096};
      const auto ens = traj::sample_first_jumps(tc);
      const double reference = n == 0 ? 0.0 : quadrature_tf(params, cfg.T, n);
      const double empirical = cfg.T * ens.empirical_fnn;
      const double stderr_tf = cfg.T * ens.standard_error;
      // z against the null spread implied by the reference probability.
      const double q = std::clamp(reference * n, 0.0, 1.0);
      const double sigma = n == 0 ? 0.0 : std::sqrt(q * (1.0 - q) / cfg.n_traj) / n;
      double z = 0.0;
      if (sigma > 0.0) {
        z = (empirical - reference) / sigma;
      } else if (empirical != reference) {
        z = std::numeric_limits<double>::infinity();
      }
      if (std::abs(z) > 3.0) rep.exit_code = exit_gate_failed;
      table.add({std::string(to_string(cfg.model)), chi, std::int64_t{n},
                 std::int64_t{cfg.n_traj}, empirical, stderr_tf, reference, z});
    }
  }
  rep.files.emplace_back("traject", std::move(table));
  rep.provenance = {{"empirical_T_fnn", to_string(Provenance::empirical)},
                    {"reference_T_fnn", to_string(Provenance::quadrature)}};
  return rep;
}

Report cmd_slope(const RunConfig& cfg) {
  const NRange r = cfg.effective_n_range();
  Report rep;
  DataTable table;
  table.columns = {"model", "chi", "n_lo", "n_hi", "slope", "implied_beta"};
  for (double chi : cfg.chi) {
    const ModelParams params = make_params(cfg.model, cfg, chi);
    const auto col = quadrature_column(params, cfg.T, r.lo, r.hi);
    std::vector<double> ns, fs;
    for (int n = r.lo; n <= r.hi; ++n) {
      const auto& o = col[static_cast<std::size_t>(n - r.lo)];
      if (!o.error.empty()) throw Error("slope: n=" + std::to_string(n) + ": " + o.error);
      ns.push_back(n);
      fs.push_back(o.value);
    }
    const PowerLawFit fit = fit_power_law(ns, fs);
    table.add({std::string(to_string(cfg.model)), chi, std::int64_t{r.lo},
               std::int64_t{r.hi}, fit.slope, implied_beta(fit.slope)});
  }
  rep.files.emplace_back("slope", std::move(table));
  rep.provenance = {{"slope", to_string(Provenance::quadrature)}};
  return rep;
}

Report run_command(const RunConfig& cfg) {
  cfg.validate();
  switch (cfg.command) {
    case Command::coeffs:
      return cmd_coeffs(cfg);
    case Command::compare:
      return cmd_compare(cfg);
    case Command::figures:
      return cmd_figures(cfg);
    case Command::traject:
      return cmd_traject(cfg);
    case Command::slope:
      return cmd_slope(cfg);
  }
  throw InvalidConfig("unknown command");
}

int execute(const RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> captured;
  Report rep;
  {
    diagnostics::ScopedWarningCapture capture(captured);
    rep = run_command(cfg);
  }
  rep.warnings.insert(rep.warnings.begin(), captured.begin(), captured.end());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto render = [&](const DataTable& t) {
    return cfg.format == OutputFormat::csv ? t.to_csv() : t.to_json();
  };

  std::vector<std::filesystem::path> written;
  std::filesystem::path manifest_path;
  if (cfg.command == Command::figures) {
    const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
    std::filesystem::create_directories(dir);
    for (const auto& [name, table] : rep.files) {
      std::filesystem::path p = dir / name;
      if (cfg.format == OutputFormat::json) p.replace_extension(".json");
      write_atomic(p, render(table));
      written.push_back(p);
    }
    manifest_path = dir / "manifest.json";
  } else if (cfg.out.empty()) {
    for (const auto& [name, table] : rep.files) out << render(table);
  } else {
    if (cfg.out.has_parent_path()) std::filesystem::create_directories(cfg.out.parent_path());
    write_atomic(cfg.out, render(rep.files.front().second));
    written.push_back(cfg.out);
    manifest_path = cfg.out;
    manifest_path += ".manifest.json";
  }

  for (const auto& w : rep.warnings) diagnostics::warn(w);

  if (!manifest_path.empty()) {
    nlohmann::ordered_json m;
    m["tool"] = "qjump";
    m["version"] = QJUMP_VERSION;
    m["command"] = to_string(cfg.command);
    nlohmann::ordered_json c;
    c["model"] = cfg.command == Command::figures ? "osc" : to_string(cfg.model);
    c["chi"] = cfg.chi;
    c["lambda_T"] = cfg.lambda_T;
    c["omega_over_g"] = cfg.omega_over_g;
    c["T"] = cfg.T;
    const NRange r = cfg.effective_n_range();
    c["n"] = {r.lo, r.hi};
    c["n_traj"] = cfg.n_traj;
    c["seed"] = cfg.seed;
    c["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
    c["method"] = cfg.methods;
    c["tol"] = cfg.tol ? nlohmann::ordered_json(*cfg.tol) : nlohmann::ordered_json(nullptr);
    c["full"] = cfg.full;
    m["config"] = c;
    m["config_text"] = cfg.to_config_text();
    nlohmann::ordered_json prov = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rep.provenance) prov[k] = v;
    m["provenance"] = prov;
    m["neglected_tail_bound"] = std::exp(-cfg.lambda_T);
    auto gates = nlohmann::ordered_json::array();
    for (const auto& g : rep.gates) {
      gates.push_back({{"method", g.method},
                       {"chi", g.chi},
                       {"tolerance", g.tolerance},
                       {"max_abs_rel_err", std::isfinite(g.max_abs_rel_err)
                                               ? nlohmann::ordered_json(g.max_abs_rel_err)
                                               : nlohmann::ordered_json(nullptr)},
                       {"passed", g.passed}});
    }
    m["gates"] = gates;
    auto files = nlohmann::ordered_json::array();
    for (const auto& p : written) files.push_back(p.filename().string());
    m["files"] = files;
    m["warnings"] = rep.warnings;
    m["wall_clock_seconds"] = seconds;
    m["exit_code"] = rep.exit_code;
    write_atomic(manifest_path, m.dump(2) + "\n");
  }
  return rep.exit_code;
}

}  // namespace qjump::cli
