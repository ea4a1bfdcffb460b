#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const fs::path tmp = fs::temp_directory_path() / "logsplit_cli_out.txt";
  const std::string cmd = std::string(LOGSPLIT_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << body;
  return p;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

} // namespace

TEST_CASE("cli: help and usage errors") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("run --help").code == 0);
  CHECK(run_cli("frobnicate").code == 1);
  CHECK(run_cli("run").code == 1); // missing --config
  CHECK(run_cli("table --config /nonexistent.json").code == 1);
}

TEST_CASE("cli: config errors exit with code 1") {
  const auto bad = write_config("logsplit_bad.json", R"({"reg":{"kind":"local_energy","n":1}})");
  const CliResult r = run_cli("run --config " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("n must be >= 2") != std::string::npos);

  const auto nonint = write_config("logsplit_nonint.json", R"({"tau":0.07,"T":3.0})");
  CHECK(run_cli("run --config " + nonint.string()).code == 1);

  const auto unknown = write_config("logsplit_unknown.json", R"({"taus":[0.1]})");
  const CliResult u = run_cli("run --config " + unknown.string());
  CHECK(u.code == 1);
  CHECK(u.out.find("taus") != std::string::npos);
}

TEST_CASE("cli: run writes series, final state and round-tripping metadata") {
  const auto cfg = write_config("logsplit_run.json",
                                R"({"points":[256],"tau":0.01,"T":0.1,"record_every":2})");
  const fs::path out = fs::temp_directory_path() / "logsplit_run_out";
  fs::remove_all(out);
  const CliResult r = run_cli("run --config " + cfg.string() + " --out " + out.string());
  CHECK(r.code == 0);

  const auto series = read_lines(out / "series.csv");
  REQUIRE(series.size() >= 2);
  CHECK(series[0] == "t,mass,energy_reg,energy_exact,err_l2,err_h1,err_linf,err_density_l1");
  // record_every=2 over 10 steps: t = 0, .02, .04, .06, .08, .1
  CHECK(series.size() == 7);

  const auto final_lines = read_lines(out / "final_state.csv");
  CHECK(final_lines[0] == "i,x,re,im,density");
  CHECK(final_lines.size() == 257);

  std::ifstream meta_in(out / "meta.json");
  nlohmann::json meta;
  meta_in >> meta;
  CHECK(meta.contains("config"));
  CHECK(meta.contains("version"));
  CHECK(meta["config"]["tau"] == 0.01);
  fs::remove_all(out);
}

TEST_CASE("cli: run with T = 0 emits a single row with zero error") {
  const auto cfg = write_config("logsplit_t0.json", R"({"points":[256],"tau":0.01,"T":0.0})");
  const fs::path out = fs::temp_directory_path() / "logsplit_t0_out";
  fs::remove_all(out);
  CHECK(run_cli("run --config " + cfg.string() + " --out " + out.string()).code == 0);
  const auto series = read_lines(out / "series.csv");
  REQUIRE(series.size() == 2);
  const auto cells = split_csv_line(series[1]);
  REQUIRE(cells.size() == 8);
  CHECK(cells[0] == "0");          // t
  CHECK(cells[4] == "0");          // err_l2 against the oracle at t = 0
  fs::remove_all(out);
}

TEST_CASE("cli: regfun samples the regularization with the pinned schema") {
  const fs::path out = fs::temp_directory_path() / "logsplit_regfun_out";
  fs::remove_all(out);
  const CliResult r = run_cli(
      "regfun --kind local_energy --eps 0.1 --n 2 --rho-max 0.04 --samples 5 --out " + out.string());
  CHECK(r.code == 0);
  const auto lines = read_lines(out / "regfun.csv");
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "rho,F,f,fprime,fsecond");
  // Row at rho = 0.01 = eps^2 sits on the log branch: f = ln(0.01).
  const auto row = split_csv_line(lines[2]);
  CHECK(std::abs(std::strtod(row[0].c_str(), nullptr) - 0.01) < 1e-15);
  CHECK(std::abs(std::strtod(row[2].c_str(), nullptr) - std::log(0.01)) < 1e-12);
  fs::remove_all(out);

  CHECK(run_cli("regfun --kind local_energy --eps 0.1 --n 2 --samples 5").code == 1); // no rho-max
}

TEST_CASE("cli: converge-tau writes sweep.csv") {
  const auto cfg = write_config(
      "logsplit_sweep.json",
      R"({"points":[256],"T":0.2,"tau":0.001,"reference":"fine_strang","tau_ref":0.002})");
  const fs::path out = fs::temp_directory_path() / "logsplit_sweep_out";
  fs::remove_all(out);
  const CliResult r =
      run_cli("converge-tau --config " + cfg.string() + " --taus 0.1,0.05,0.025 --out " + out.string());
  CHECK(r.code == 0);
  const auto lines = read_lines(out / "sweep.csv");
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "param_name,param_value,err_l2,err_h1,err_linf,err_density_l1,energy_err,fitted_order");
  CHECK(split_csv_line(lines[1])[0] == "tau");
  fs::remove_all(out);
}

TEST_CASE("cli: table writes the eps x tau matrix") {
  const auto cfg = write_config("logsplit_table.json", R"({"points":[256],"T":0.2,"tau":0.001})");
  const fs::path out = fs::temp_directory_path() / "logsplit_table_out";
  fs::remove_all(out);
  const CliResult r = run_cli("table --config " + cfg.string() +
                              " --eps0 0.025 --tau0 0.1 --eps-steps 2 --tau-steps 3 --out " +
                              out.string());
  CHECK(r.code == 0);
  const auto lines = read_lines(out / "table.csv");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "eps,err_tau0,err_tau1,err_tau2,rate_tau1,rate_tau2,fitted_order");
  fs::remove_all(out);
}
