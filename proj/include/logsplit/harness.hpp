#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logsplit/observables.hpp"
#include "logsplit/run_config.hpp"

// Parameter sweeps, convergence-order fits and the eps x tau error table;
// every sweep cell is an independent deterministic evolution, so cells run
// concurrently on a worker pool and assemble into identical results in any
// order.

namespace logsplit {

// Least-squares slope of ln(error) against ln(param). All entries must be
// positive and at least two points are required.
double observed_order(std::span<const double> errors, std::span<const double> params);

// rate_i = log(e_i / e_{i+1}) / log(p_i / p_{i+1}) between successive points.
std::vector<double> pairwise_rates(std::span<const double> errors, std::span<const double> params);

struct SweepMeta {
  std::string scheme;
  std::string reg;
  int reg_n = 0;
  double eps = 0.0;
  double lambda = 0.0;
  double total_time = 0.0;
  std::string grid;
  std::string norm_used;
  std::string reference;
  double tau_ref = 0.0;
};

struct SweepRow {
  double param = 0.0;
  ErrorNorms err;
  double energy_err = 0.0;
};

// One-parameter sweep result: error functionals per parameter value plus
// least-squares orders per norm (NaN when fewer than 3 usable points).
struct SweepResult {
  std::string param_name; // "tau" or "eps"
  std::vector<SweepRow> rows;
  std::map<std::string, double> fitted_order;               // per norm column
  std::map<std::string, std::vector<double>> pairwise;      // per norm column
  SweepMeta meta;

  std::vector<double> params() const;
  std::vector<double> column(const std::string& norm) const;
};

// Error at t = T for each tau against a reference: the analytic Gausson
// (cfg.reference == AnalyticGausson) or a fine StrangBAB solve of the same
// regularized model at tau_ref (default min(taus)/100, capped so a single
// reference run stays below ~10^7 steps). Each tau must divide T evenly.
SweepResult converge_in_tau(const RunConfig& base, std::vector<double> taus);

// Error of the regularized model against the analytic Gausson at t = T for
// each eps, integrating with the (small) base.tau. Also records the energy
// error of the initial data per eps.
SweepResult converge_in_eps(const RunConfig& base, std::vector<double> epsilons);

// L2 error matrix over the ladder eps_i = eps0/4^i, tau_j = tau0/2^j against
// the analytic Gausson, as in the tau x eps convergence table; per-row
// pairwise rates and per-row fitted orders excluding plateaued cells
// (tau-halving changing the error by < 5%).
struct EpsTauTable {
  std::vector<double> eps_values;
  std::vector<double> tau_values;
  std::vector<std::vector<double>> err;   // [i][j], norm in meta.norm_used
  std::vector<std::vector<double>> rate;  // [i][j], j >= 1; rate[i][0] = NaN
  std::vector<std::vector<bool>> plateau; // cell excluded from the row fit
  std::vector<double> row_fitted_order;   // NaN when < 3 non-plateau cells
  SweepMeta meta;
};

EpsTauTable table_eps_tau(const RunConfig& base, double eps0, double tau0, int eps_steps, int tau_steps);

// Two-Gausson interaction scenarios. Desk-scale defaults: 256^2 grid on
// [-16,16]^2, tau = 1e-3, T = 1, eps = 1e-6, n = 4; `full` switches to the
// reference configuration (h = 1/16, eps = 1e-12, case iii on [-48,48]^2).
enum class ScenarioCase { I, II, III };

ScenarioCase scenario_case_from_string(const std::string& name);

struct ScenarioOptions {
  bool full = false;
  double total_time = 1.0;
  double tau = 1e-3;
  double eps = 1e-6;
  int reg_n = 4;
  std::size_t points = 256;   // per axis (desk scale)
  double snap_every = 0.5;    // snapshot cadence in time units
  std::int64_t record_every = 10;
};

struct ScenarioResult {
  RunConfig config;
  ObservableSeries series;
  std::vector<Vec2> momenta;            // at recorded times
  Field final_state;
  std::vector<std::filesystem::path> snapshot_files;
};

// Runs the preset and writes series.csv, snapshot_*.csv and meta.json into
// out_dir (created if missing).
ScenarioResult scenario_2d(ScenarioCase which, const std::filesystem::path& out_dir,
                           const ScenarioOptions& options = {});

// The preset initial data and config for a scenario case (exposed for tests).
RunConfig scenario_config(ScenarioCase which, const ScenarioOptions& options = {});

} // namespace logsplit
