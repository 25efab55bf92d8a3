#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qjump/coefficients.hpp"

namespace qjump::cli {

enum class Command { coeffs, compare, figures, traject, slope };
enum class OutputFormat { csv, json };

const char* to_string(Command c);
Command parse_command(const std::string& s);
ModelTag parse_model(const std::string& s);
OutputFormat parse_format(const std::string& s);

struct NRange {
  int lo = 1;
  int hi = 50;
};

/// "LO:HI" or a single "N".
NRange parse_n_range(const std::string& s);
/// Comma-separated list of positive reals.
std::vector<double> parse_chi_list(const std::string& s);

struct RunConfig {
  Command command = Command::coeffs;
  ModelTag model = ModelTag::jc;
  std::vector<double> chi{0.5};
  double lambda_T = 10.0;
  double omega_over_g = 1000.0;
  /// Averaging window. Every reported coefficient is the product T f.
  double T = 1.0;
  std::optional<NRange> n_range;
  int n_traj = 100000;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  OutputFormat format = OutputFormat::csv;
  /// compare: methods to evaluate; listed methods are gated.
  std::vector<std::string> methods;
  /// compare: overrides the per-method tolerance gates.
  std::optional<double> tol;
  /// coeffs: include off-diagonal entries.
  bool full = false;

  /// n_range, or the command's default window.
  NRange effective_n_range() const;
  /// Throws InvalidConfig.
  void validate() const;
  /// key = value lines that reproduce this configuration.
  std::string to_config_text() const;
};

/// Apply `key = value` lines ('#' starts a comment) onto cfg. Keys accept
/// '-' or '_' separators. Unknown keys and malformed lines are errors.
void apply_config_text(RunConfig& cfg, const std::string& text,
                       const std::string& origin = "<config>");
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
/// Apply a single key/value pair; shared by the file parser and the flags.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// |g|, lambda and omega for chi at the configured lambda T and T.
struct DerivedParams {
  double abs_g;
  double lambda;
  double omega;
};
DerivedParams derive(const RunConfig& cfg, double chi);
ModelParams make_params(ModelTag model, const RunConfig& cfg, double chi);

}  // namespace qjump::cli
