#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "format.hpp"
#include "qjump/errors.hpp"
#include "reports.hpp"
#include "run_config.hpp"

using namespace qjump;
using namespace qjump::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qjump_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + QJUMP_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parsers") {
  CHECK(parse_command("slope") == Command::slope);
  CHECK_THROWS_AS(parse_command("plot"), InvalidConfig);
  CHECK(parse_model("jc") == ModelTag::jc);
  CHECK(parse_model("osc") == ModelTag::oscillator);
  CHECK(parse_model("oscillator") == ModelTag::oscillator);
  CHECK_THROWS_AS(parse_model("qubit"), InvalidConfig);
  CHECK(parse_format("json") == OutputFormat::json);
  const auto r = parse_n_range("5:300");
  CHECK(r.lo == 5);
  CHECK(r.hi == 300);
  CHECK(parse_n_range("5").lo == 5);
  CHECK(parse_n_range("5").hi == 5);
  CHECK_THROWS_AS(parse_n_range("a:5"), InvalidConfig);
  CHECK_THROWS_AS(parse_n_range("7:3"), InvalidConfig);
  CHECK(parse_chi_list("0.1, 0.5,2") == std::vector<double>{0.1, 0.5, 2.0});
  CHECK_THROWS_AS(parse_chi_list("0.1,-1"), InvalidConfig);
}

TEST_CASE("config text") {
  RunConfig cfg;
  apply_config_text(cfg,
                    "# comment\n"
                    "model = osc\n"
                    "lambda-T = 15   # trailing\n"
                    "\n"
                    "chi = 0.2,0.4\n"
                    "n = 2:9\n");
  CHECK(cfg.model == ModelTag::oscillator);
  CHECK(cfg.lambda_T == 15.0);
  CHECK(cfg.chi == std::vector<double>{0.2, 0.4});
  CHECK(cfg.effective_n_range().lo == 2);
  try {
    apply_config_text(cfg, "chi = 1\nwidth = 3\n", "run.cfg");
    FAIL("expected InvalidConfig");
  } catch (const InvalidConfig& e) {
    CHECK(std::string(e.what()).find("run.cfg:2") != std::string::npos);
    CHECK(std::string(e.what()).find("'width'") != std::string::npos);
  }
  CHECK_THROWS_AS(apply_config_text(cfg, "chi 1\n"), InvalidConfig);
}

TEST_CASE("config text round-trips") {
  RunConfig cfg;
  cfg.command = Command::compare;
  cfg.model = ModelTag::oscillator;
  cfg.chi = {0.05, 1.1};
  cfg.lambda_T = 20.0;
  cfg.n_range = NRange{3, 40};
  cfg.methods = {"tricomi", "steepest_descent"};
  cfg.tol = 1e-3;
  RunConfig back;
  back.command = Command::compare;
  apply_config_text(back, cfg.to_config_text());
  CHECK(back.to_config_text() == cfg.to_config_text());
}

TEST_CASE("validation and defaults") {
  RunConfig cfg;
  cfg.command = Command::slope;
  CHECK(cfg.effective_n_range().lo == 50);
  CHECK(cfg.effective_n_range().hi == 300);
  cfg.n_range = NRange{1, 5};
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg.command = Command::coeffs;
  cfg.n_range = NRange{0, 5};
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg.command = Command::traject;
  CHECK_NOTHROW(cfg.validate());
  const auto d = derive(RunConfig{}, 0.5);
  CHECK(d.lambda == 10.0);
  CHECK(d.abs_g == 10.0);
  CHECK(d.omega == 10000.0);
}

TEST_CASE("number formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::stod(format_real(M_PI)) == M_PI);
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("plain") == "plain");
}

TEST_CASE("data tables") {
  DataTable t{{"name", "x", "k"}, {}};
  t.add({std::string("a"), 0.5, std::int64_t{3}});
  t.add({std::string("b"), std::numeric_limits<double>::quiet_NaN(), std::int64_t{4}});
  CHECK(t.to_csv() == "name,x,k\na,0.5,3\nb,nan,4\n");
  const auto j = nlohmann::json::parse(t.to_json());
  CHECK(j.size() == 2);
  CHECK(j[0]["x"] == 0.5);
  CHECK(j[1]["x"].is_null());
  CHECK_THROWS(t.add({std::string("short")}));
}

TEST_CASE("atomic writes") {
  const fs::path dir = scratch_dir("atomic");
  const fs::path target = dir / "out.csv";
  write_atomic(target, "first\n");
  write_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  for (const auto& entry : fs::directory_iterator(dir)) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("execute writes data and manifest") {
  const fs::path dir = scratch_dir("execute");
  RunConfig cfg;
  cfg.command = Command::compare;
  cfg.n_range = NRange{1, 10};
  cfg.methods = {"exact"};
  cfg.out = dir / "cmp.csv";
  std::ostringstream sink;
  CHECK(execute(cfg, sink) == exit_pass);
  const auto manifest = nlohmann::json::parse(slurp(dir / "cmp.csv.manifest.json"));
  CHECK(manifest["command"] == "compare");
  CHECK(manifest["exit_code"] == 0);
  CHECK(manifest["gates"].size() == 1);
  CHECK(manifest["gates"][0]["passed"] == true);
  CHECK(manifest.contains("config_text"));
  const std::string csv = slurp(dir / "cmp.csv");
  CHECK(csv.rfind("model,chi,lambdaT,n,method,T_fnn,rel_err_vs_quadrature\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("binary exit codes and reproducibility") {
  const fs::path dir = scratch_dir("binary");
  const std::string out = (dir / "a.csv").string();
  CHECK(run_cli("coeffs --model jc --chi 0.5 --n 1:4 --out " + out) == 0);
  CHECK(fs::exists(dir / "a.csv.manifest.json"));
  CHECK(run_cli("coeffs --bogus") == 1);
  CHECK(run_cli("coeffs --model qubit") == 1);

  std::ofstream(dir / "bad.cfg") << "chi = 0.5\nwidth = 3\n";
  CHECK(run_cli("coeffs --config " + (dir / "bad.cfg").string()) == 1);

  // Gate failure: the small-chi closed form is far off at chi = 2.
  CHECK(run_cli("compare --model osc --chi 2 --n 1:20 --method small_chi_exact --out " +
                (dir / "gate.csv").string()) == 2);

  const std::string t1 = (dir / "t1.csv").string(), t2 = (dir / "t2.csv").string();
  const std::string args = "traject --model jc --chi 0.5 --n 3:3 --n-traj 20000 --seed 7 --out ";
  CHECK(run_cli(args + t1) == 0);
  CHECK(run_cli(args + t2) == 0);
  CHECK(slurp(t1) == slurp(t2));
  CHECK(!slurp(t1).empty());
}

TEST_CASE("flags override the config file") {
  const fs::path dir = scratch_dir("precedence");
  std::ofstream(dir / "run.cfg") << "model = jc\nchi = 0.5\nn = 1:3\n";
  const std::string out = (dir / "p.csv").string();
  CHECK(run_cli("coeffs --config " + (dir / "run.cfg").string() + " --chi 0.25 --out " + out) ==
        0);
  const std::string csv = slurp(out);
  CHECK(csv.find("\njc,0.25,") != std::string::npos);
  CHECK(csv.find("\njc,0.5,") == std::string::npos);
}
