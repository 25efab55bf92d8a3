#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "format.hpp"
#include "qjump/errors.hpp"

namespace qjump::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidConfig(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidConfig(key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw InvalidConfig(key + ": expected true or false, got '" + text + "'");
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::coeffs:
      return "coeffs";
    case Command::compare:
      return "compare";
    case Command::figures:
      return "figures";
    case Command::traject:
      return "traject";
    case Command::slope:
      return "slope";
  }
  return "?";
}

Command parse_command(const std::string& s) {
  for (Command c : {Command::coeffs, Command::compare, Command::figures,
                    Command::traject, Command::slope}) {
    if (s == to_string(c)) return c;
  }
  throw InvalidConfig("unknown command '" + s + "'");
}

ModelTag parse_model(const std::string& s) {
  const std::string v = trim(s);
  if (v == "jc") return ModelTag::jc;
  if (v == "osc" || v == "oscillator") return ModelTag::oscillator;
  throw InvalidConfig("model: expected jc or osc, got '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
  const std::string v = trim(s);
  if (v == "csv") return OutputFormat::csv;
  if (v == "json") return OutputFormat::json;
  throw InvalidConfig("format: expected csv or json, got '" + s + "'");
}

NRange parse_n_range(const std::string& s) {
  const std::string v = trim(s);
  const auto colon = v.find(':');
  NRange r;
  if (colon == std::string::npos) {
    r.lo = r.hi = parse_integer<int>("n", v);
  } else {
    r.lo = parse_integer<int>("n", v.substr(0, colon));
    r.hi = parse_integer<int>("n", v.substr(colon + 1));
  }
  if (r.lo < 0 || r.hi < r.lo) {
    throw InvalidConfig("n: need 0 <= LO <= HI, got '" + s + "'");
  }
  return r;
}

std::vector<double> parse_chi_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = parse_real("chi", item);
    if (!(v > 0.0)) throw InvalidConfig("chi: values must be > 0");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidConfig("chi: empty list");
  return out;
}

NRange RunConfig::effective_n_range() const {
  if (n_range) return *n_range;
  switch (command) {
    case Command::figures:
      return {1, 100};
    case Command::traject:
      return {5, 5};
    case Command::slope:
      return {50, 300};
    default:
      return {1, 50};
  }
}

void RunConfig::validate() const {
  if (chi.empty()) throw InvalidConfig("chi: empty list");
  for (double c : chi) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidConfig("chi must be > 0");
  }
  if (!(lambda_T > 0.0)) throw InvalidConfig("lambda_T must be > 0");
  if (!(omega_over_g > 0.0)) throw InvalidConfig("omega_over_g must be > 0");
  if (!(T > 0.0)) throw InvalidConfig("T must be > 0");
  const NRange r = effective_n_range();
  const int min_n = command == Command::traject ? 0 : 1;
  if (r.lo < min_n || r.hi < r.lo) {
    throw InvalidConfig("n: need " + std::to_string(min_n) + " <= LO <= HI");
  }
  if (r.hi > 5000) throw InvalidConfig("n: HI must be <= 5000");
  if (command == Command::slope && r.hi - r.lo + 1 < 10) {
    throw InvalidConfig("slope: the n window needs at least 10 points");
  }
  if (command == Command::traject && n_traj < 1) {
    throw InvalidConfig("n_traj must be >= 1");
  }
  if (tol && !(*tol > 0.0)) throw InvalidConfig("tol must be > 0");
}

std::string RunConfig::to_config_text() const {
  std::ostringstream os;
  os << "model = " << to_string(model) << '\n';
  os << "chi = ";
  for (std::size_t i = 0; i < chi.size(); ++i) os << (i ? "," : "") << format_real(chi[i]);
  os << '\n';
  os << "lambda_T = " << format_real(lambda_T) << '\n';
  os << "omega_over_g = " << format_real(omega_over_g) << '\n';
  os << "T = " << format_real(T) << '\n';
  const NRange r = effective_n_range();
  os << "n = " << r.lo << ':' << r.hi << '\n';
  os << "n_traj = " << n_traj << '\n';
  os << "seed = " << seed << '\n';
  os << "format = " << (format == OutputFormat::csv ? "csv" : "json") << '\n';
  if (!methods.empty()) os << "method = " << join(methods) << '\n';
  if (tol) os << "tol = " << format_real(*tol) << '\n';
  if (full) os << "full = true\n";
  return os.str();
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = normalize_key(trim(raw_key));
  if (key == "model") {
    cfg.model = parse_model(value);
  } else if (key == "chi") {
    cfg.chi = parse_chi_list(value);
  } else if (key == "lambda_T") {
    cfg.lambda_T = parse_real(key, value);
  } else if (key == "omega_over_g") {
    cfg.omega_over_g = parse_real(key, value);
  } else if (key == "T") {
    cfg.T = parse_real(key, value);
  } else if (key == "n") {
    cfg.n_range = parse_n_range(value);
  } else if (key == "n_traj") {
    cfg.n_traj = parse_integer<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "out") {
    cfg.out = trim(value);
  } else if (key == "format") {
    cfg.format = parse_format(value);
  } else if (key == "method") {
    cfg.methods.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!trim(item).empty()) cfg.methods.push_back(trim(item));
    }
  } else if (key == "tol") {
    cfg.tol = parse_real(key, value);
  } else if (key == "full") {
    cfg.full = parse_bool(key, value);
  } else {
    throw InvalidConfig("unknown config key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text,
                       const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig(origin + ":" + std::to_string(line_no) +
                          ": expected 'key = value'");
    }
    try {
      apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const InvalidConfig& e) {
      throw InvalidConfig(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidConfig("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(cfg, buffer.str(), path.string());
}

DerivedParams derive(const RunConfig& cfg, double chi) {
  DerivedParams d;
  d.lambda = cfg.lambda_T / cfg.T;
  d.abs_g = d.lambda / (2.0 * chi);
  d.omega = cfg.omega_over_g * d.abs_g;
  return d;
}

ModelParams make_params(ModelTag model, const RunConfig& cfg, double chi) {
  const DerivedParams d = derive(cfg, chi);
  if (model == ModelTag::jc) return jc::JCParams::make(d.omega, d.omega, d.abs_g, d.lambda);
  return osc::OscParams::make(d.omega, d.omega, d.abs_g, d.lambda);
}

}  // namespace qjump::cli
