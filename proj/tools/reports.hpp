#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "format.hpp"
#include "run_config.hpp"

namespace qjump::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_gate_failed = 2;

struct GateResult {
  std::string method;
  double chi = 0.0;
  double tolerance = 0.0;
  double max_abs_rel_err = 0.0;
  bool passed = true;
};

struct Report {
  /// Output name (file name for figures) and its rows.
  std::vector<std::pair<std::string, DataTable>> files;
  /// Method or column name and the provenance of its values.
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<GateResult> gates;
  std::vector<std::string> warnings;
  int exit_code = exit_pass;
};

/// Default tolerance gate for a compare method, or a negative value when the
/// method is never gated.
double default_tolerance(const std::string& method);
/// Methods evaluated by compare for a model when none are requested.
std::vector<std::string> compare_methods(ModelTag model);

Report cmd_coeffs(const RunConfig& cfg);
Report cmd_compare(const RunConfig& cfg);
Report cmd_figures(const RunConfig& cfg);
Report cmd_traject(const RunConfig& cfg);
Report cmd_slope(const RunConfig& cfg);

Report run_command(const RunConfig& cfg);

/// Runs the command and writes its data and JSON manifest. Data goes to
/// cfg.out (a directory for figures) or to `out` when cfg.out is empty.
/// Returns the exit code.
int execute(const RunConfig& cfg, std::ostream& out);

}  // namespace qjump::cli
