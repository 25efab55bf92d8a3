#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qjump/errors.hpp"
#include "reports.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--model", "model", "Detector model: jc or osc"},
    {"--chi", "chi", "Comma-separated chi = lambda/(2|g|) values"},
    {"--lambda-T", "lambda_T", "Dimensionless window lambda T (default 10)"},
    {"--omega-over-g", "omega_over_g", "Field frequency over |g| (default 1000)"},
    {"--T", "T", "Averaging window T (default 1); values are reported as T f"},
    {"--n", "n", "Photon-number window LO:HI"},
    {"--n-traj", "n_traj", "Trajectories per row (traject)"},
    {"--seed", "seed", "Master seed (traject)"},
    {"--out", "out", "Output file, or directory for figures"},
    {"--format", "format", "csv or json"},
    {"--method", "method", "compare: comma-separated methods; listed methods are gated"},
    {"--tol", "tol", "compare: override the gate tolerance"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace qjump::cli;
  CLI::App app{"Averaged quantum-jump coefficients for photodetector models"};
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::string config_path;
  bool full = false;

  const std::pair<Command, const char*> commands[] = {
      {Command::coeffs, "Tabulate T f_mn by quadrature"},
      {Command::compare, "Compare analytic forms against quadrature"},
      {Command::figures, "Write the fig1/fig2/fig3 datasets"},
      {Command::traject, "Monte Carlo first-jump statistics"},
      {Command::slope, "Log-log slope of f_nn and the implied beta"},
  };
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), help);
    for (const auto& f : kFlags) {
      const std::string key = f.key;
      sub->add_option_function<std::string>(
          f.flag, [&flags, key](const std::string& v) { flags[key] = v; }, f.help);
    }
    sub->add_option("--config", config_path, "key = value configuration file");
    if (cmd == Command::coeffs) sub->add_flag("--full", full, "Include off-diagonal entries");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_error;
  }

  try {
    RunConfig cfg;
    for (const auto& [cmd, help] : commands) {
      if (app.got_subcommand(to_string(cmd))) cfg.command = cmd;
    }
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    for (const auto& [key, value] : flags) apply_setting(cfg, key, value);
    if (full) cfg.full = true;
    return execute(cfg, std::cout);
  } catch (const qjump::Error& e) {
    std::cerr << "qjump: error: " << e.what() << '\n';
    return exit_error;
  } catch (const std::exception& e) {
    std::cerr << "qjump: error: " << e.what() << '\n';
    return exit_error;
  }
}
