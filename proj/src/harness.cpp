#include "logsplit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "logsplit/csv.hpp"

namespace logsplit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void run_cells(std::size_t count, int workers, const std::function<void(std::size_t)>& cell) {
  const int n = std::min<int>(resolve_workers(workers), static_cast<int>(count));
  if (n <= 1) {
    for (std::size_t i = 0; i < count; ++i) cell(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (int w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          cell(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

SweepMeta make_meta(const RunConfig& cfg) {
  SweepMeta m;
  m.scheme = to_string(cfg.scheme);
  m.reg = to_string(cfg.reg_kind);
  m.reg_n = cfg.reg_n;
  m.eps = cfg.reg_eps;
  m.lambda = cfg.lambda;
  m.total_time = cfg.total_time;
  m.grid = std::to_string(cfg.points[0]);
  if (cfg.dim == 2) m.grid += "x" + std::to_string(cfg.points[1]);
  m.norm_used = cfg.fit_norm;
  m.reference = to_string(cfg.reference);
  m.tau_ref = cfg.tau_ref;
  return m;
}

double fit_or_nan(const std::vector<double>& errors, const std::vector<double>& params) {
  std::vector<double> e, p;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] > 0.0 && std::isfinite(errors[i])) {
      e.push_back(errors[i]);
      p.push_back(params[i]);
    }
  }
  if (e.size() < 3) return kNaN;
  return observed_order(e, p);
}

void fill_sweep_fits(SweepResult& sweep) {
  const auto params = sweep.params();
  for (const std::string& norm : {"l2", "h1", "linf", "density_l1", "energy_err"}) {
    const auto col = sweep.column(norm);
    sweep.fitted_order[norm] = fit_or_nan(col, params);
    std::vector<double> rates(params.size() < 2 ? 0 : params.size() - 1, kNaN);
    for (std::size_t i = 0; i + 1 < params.size(); ++i)
      if (col[i] > 0.0 && col[i + 1] > 0.0)
        rates[i] = std::log(col[i] / col[i + 1]) / std::log(params[i] / params[i + 1]);
    sweep.pairwise[norm] = std::move(rates);
  }
}

std::int64_t steps_for(double total_time, double tau, const char* what) {
  const double ratio = total_time / tau;
  const double rounded = std::round(ratio);
  if (!(tau > 0.0) || std::abs(ratio - rounded) > 1e-12 * std::max(1.0, ratio))
    throw std::invalid_argument(std::string(what) + " = " + std::to_string(tau) +
                                " does not divide T = " + std::to_string(total_time));
  return static_cast<std::int64_t>(rounded);
}

Field final_state(const RunConfig& cfg, const Field& u0, double tau, std::int64_t steps,
                  SplitScheme scheme) {
  EvolveConfig ec;
  ec.tau = tau;
  ec.steps = steps;
  ec.lambda = cfg.lambda;
  ec.reg = cfg.regularization();
  ec.scheme = scheme;
  ec.record_every = 0;
  EvolveObservers obs;
  obs.record_energy = false;
  return evolve(u0, ec, obs).final_state;
}

} // namespace

double observed_order(std::span<const double> errors, std::span<const double> params) {
  if (errors.size() != params.size() || errors.size() < 2)
    throw std::invalid_argument("observed_order: need matching arrays of length >= 2");
  double sx = 0.0, sy = 0.0;
  const auto n = static_cast<double>(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(params[i] > 0.0))
      throw std::invalid_argument("observed_order: entries must be positive");
    sx += std::log(params[i]);
    sy += std::log(errors[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double dx = std::log(params[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("observed_order: all params equal");
  return sxy / sxx;
}

std::vector<double> pairwise_rates(std::span<const double> errors, std::span<const double> params) {
  if (errors.size() != params.size() || errors.size() < 2)
    throw std::invalid_argument("pairwise_rates: need matching arrays of length >= 2");
  std::vector<double> rates(errors.size() - 1);
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0))
      throw std::invalid_argument("pairwise_rates: entries must be positive");
    rates[i] = std::log(errors[i] / errors[i + 1]) / std::log(params[i] / params[i + 1]);
  }
  return rates;
}

std::vector<double> SweepResult::params() const {
  std::vector<double> p(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) p[i] = rows[i].param;
  return p;
}

std::vector<double> SweepResult::column(const std::string& norm) const {
  std::vector<double> c(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (norm == "l2") c[i] = r.err.l2;
    else if (norm == "h1") c[i] = r.err.h1;
    else if (norm == "linf") c[i] = r.err.linf;
    else if (norm == "density_l1") c[i] = r.err.density_l1;
    else if (norm == "energy_err") c[i] = r.energy_err;
    else throw std::invalid_argument("unknown norm column: " + norm);
  }
  return c;
}

SweepResult converge_in_tau(const RunConfig& base, std::vector<double> taus) {
  base.validate();
  if (taus.empty()) throw std::invalid_argument("converge_in_tau: need at least one tau");
  std::vector<std::int64_t> steps(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) steps[i] = steps_for(base.total_time, taus[i], "tau");

  const Field u0 = base.initial_field();
  Field reference(u0.domain);
  double tau_ref_used = 0.0;
  if (base.reference == ReferenceKind::AnalyticGausson) {
    reference = base.oracle_field(base.total_time);
  } else {
    // Fine StrangBAB solve of the same regularized model; cap the reference
    // run at ~10^7 steps.
    double tau_ref = base.tau_ref > 0.0 ? base.tau_ref
                                        : *std::min_element(taus.begin(), taus.end()) / 100.0;
    std::int64_t ref_steps = static_cast<std::int64_t>(std::ceil(base.total_time / tau_ref));
    ref_steps = std::min<std::int64_t>(ref_steps, 10'000'000);
    tau_ref = base.total_time / static_cast<double>(ref_steps);
    reference = final_state(base, u0, tau_ref, ref_steps, SplitScheme::StrangBAB);
    tau_ref_used = tau_ref;
  }
  const double e0_reg = energy(u0, base.lambda, base.regularization());

  SweepResult sweep;
  sweep.param_name = "tau";
  sweep.rows.resize(taus.size());
  run_cells(taus.size(), base.workers, [&](std::size_t i) {
    const Field uT = final_state(base, u0, taus[i], steps[i], base.scheme);
    SweepRow row;
    row.param = taus[i];
    row.err = error_norms(uT, reference);
    // Energy-conservation defect of the regularized flow at t = T.
    row.energy_err = std::abs(energy(uT, base.lambda, base.regularization()) - e0_reg);
    sweep.rows[i] = row;
  });
  fill_sweep_fits(sweep);
  sweep.meta = make_meta(base);
  sweep.meta.tau_ref = tau_ref_used;
  return sweep;
}

SweepResult converge_in_eps(const RunConfig& base, std::vector<double> epsilons) {
  base.validate();
  if (epsilons.empty()) throw std::invalid_argument("converge_in_eps: need at least one eps");
  const std::int64_t steps = base.steps();
  const Field u0 = base.initial_field();
  const Field exact = base.oracle_field(base.total_time);

  SweepResult sweep;
  sweep.param_name = "eps";
  sweep.rows.resize(epsilons.size());
  run_cells(epsilons.size(), base.workers, [&](std::size_t i) {
    RunConfig cfg = base;
    cfg.reg_eps = epsilons[i];
    cfg.validate();
    const Field uT = final_state(cfg, u0, cfg.tau, steps, cfg.scheme);
    SweepRow row;
    row.param = epsilons[i];
    row.err = error_norms(uT, exact);
    row.energy_err = energy_error(u0, cfg.lambda, cfg.regularization());
    sweep.rows[i] = row;
  });
  fill_sweep_fits(sweep);
  sweep.meta = make_meta(base);
  sweep.meta.eps = kNaN; // varies along the sweep
  return sweep;
}

EpsTauTable table_eps_tau(const RunConfig& base, double eps0, double tau0, int eps_steps,
                          int tau_steps) {
  base.validate();
  if (eps_steps < 1 || tau_steps < 1)
    throw std::invalid_argument("table_eps_tau: need at least one eps and one tau step");
  if (!(eps0 > 0.0) || !(tau0 > 0.0))
    throw std::invalid_argument("table_eps_tau: eps0 and tau0 must be positive");

  EpsTauTable table;
  for (int i = 0; i < eps_steps; ++i) table.eps_values.push_back(eps0 / std::pow(4.0, i));
  for (int j = 0; j < tau_steps; ++j) table.tau_values.push_back(tau0 / std::pow(2.0, j));
  std::vector<std::int64_t> steps(tau_steps);
  for (int j = 0; j < tau_steps; ++j) steps[j] = steps_for(base.total_time, table.tau_values[j], "tau");

  const Field u0 = base.initial_field();
  const Field exact = base.oracle_field(base.total_time);

  table.err.assign(eps_steps, std::vector<double>(tau_steps, 0.0));
  const std::size_t cells = static_cast<std::size_t>(eps_steps) * tau_steps;
  run_cells(cells, base.workers, [&](std::size_t c) {
    const int i = static_cast<int>(c) / tau_steps;
    const int j = static_cast<int>(c) % tau_steps;
    RunConfig cfg = base;
    cfg.reg_eps = table.eps_values[i];
    cfg.validate();
    const Field uT = final_state(cfg, u0, table.tau_values[j], steps[j], cfg.scheme);
    table.err[i][j] = error_norms(uT, exact).l2;
  });

  table.rate.assign(eps_steps, std::vector<double>(tau_steps, kNaN));
  table.plateau.assign(eps_steps, std::vector<bool>(tau_steps, false));
  table.row_fitted_order.assign(eps_steps, kNaN);
  for (int i = 0; i < eps_steps; ++i) {
    std::vector<double> fit_err, fit_tau;
    for (int j = 0; j < tau_steps; ++j) {
      if (j >= 1) {
        const double prev = table.err[i][j - 1], cur = table.err[i][j];
        if (prev > 0.0 && cur > 0.0) table.rate[i][j] = std::log2(prev / cur);
        // Plateaued: tau-halving changes the error by less than 5%.
        table.plateau[i][j] = prev > 0.0 && std::abs(cur - prev) < 0.05 * prev;
      }
      if (!table.plateau[i][j] && table.err[i][j] > 0.0) {
        fit_err.push_back(table.err[i][j]);
        fit_tau.push_back(table.tau_values[j]);
      }
    }
    if (fit_err.size() >= 3) table.row_fitted_order[i] = observed_order(fit_err, fit_tau);
  }
  table.meta = make_meta(base);
  table.meta.norm_used = "l2";
  table.meta.reference = "analytic";
  table.meta.eps = kNaN;
  return table;
}

// --- 2D Gausson interaction scenarios ---------------------------------------

ScenarioCase scenario_case_from_string(const std::string& name) {
  if (name == "i" || name == "1") return ScenarioCase::I;
  if (name == "ii" || name == "2") return ScenarioCase::II;
  if (name == "iii" || name == "3") return ScenarioCase::III;
  throw std::invalid_argument("scenario case must be one of i, ii, iii");
}

RunConfig scenario_config(ScenarioCase which, const ScenarioOptions& options) {
  RunConfig cfg;
  cfg.dim = 2;
  cfg.lambda = -1.0;
  cfg.reg_kind = RegKind::LocalEnergy;
  cfg.reg_n = options.reg_n;
  cfg.reg_eps = options.full ? 1e-12 : options.eps;
  cfg.scheme = SplitScheme::StrangBAB;
  cfg.tau = options.tau;
  cfg.total_time = options.total_time;
  cfg.record_every = options.record_every;

  const double half = (which == ScenarioCase::III && options.full) ? 48.0 : 16.0;
  cfg.lower = {-half, -half};
  cfg.upper = {half, half};
  // Full scale uses the reference spacing h = 1/16.
  const std::size_t n = options.full ? static_cast<std::size_t>(2.0 * half * 16.0) : options.points;
  cfg.points = {n, n};

  const double b1 = std::pow(M_PI, -0.25);
  GaussonSpec g1, g2;
  g1.dim = g2.dim = 2;
  g1.lambda = g2.lambda = cfg.lambda;
  switch (which) {
    case ScenarioCase::I:
      g1.amplitude = g2.amplitude = b1;
      g1.center = {-2.0, 0.0};
      g2.center = {2.0, 0.0};
      break;
    case ScenarioCase::II:
      g1.amplitude = b1;
      g2.amplitude = b1 / 1.5;
      g1.velocity = {-0.15, 0.0};
      g1.center = {0.0, 0.0};
      g2.center = {5.0, 0.0};
      break;
    case ScenarioCase::III:
      g1.amplitude = g2.amplitude = b1;
      g2.velocity = {0.0, 0.85};
      g1.center = {-2.0, 0.0};
      g2.center = {2.0, 0.0};
      break;
  }
  cfg.initial = {g1, g2};
  cfg.reference = ReferenceKind::FineStrang; // no analytic oracle for sums
  return cfg;
}

ScenarioResult scenario_2d(ScenarioCase which, const std::filesystem::path& out_dir,
                           const ScenarioOptions& options) {
  RunConfig cfg = scenario_config(which, options);
  cfg.out_dir = out_dir.string();
  cfg.validate();
  std::filesystem::create_directories(out_dir);

  ScenarioResult result;
  result.config = cfg;

  const std::int64_t total_steps = cfg.steps();
  const std::int64_t snap_stride =
      options.snap_every <= 0.0
          ? total_steps
          : std::max<std::int64_t>(1, steps_for(options.snap_every, cfg.tau, "tau"));

  EvolveConfig ec;
  ec.tau = cfg.tau;
  ec.lambda = cfg.lambda;
  ec.reg = cfg.regularization();
  ec.scheme = cfg.scheme;
  ec.record_every = cfg.record_every;

  const auto snapshot = [&](const Field& f, double t) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_t%.3f.csv", t);
    const auto path = out_dir / name;
    write_field_csv(path, f);
    result.snapshot_files.push_back(path);
  };

  Field state = cfg.initial_field();
  auto& series = result.series;
  std::vector<double> snap_times{0.0};
  snapshot(state, 0.0);
  result.momenta.push_back(momentum(state));

  std::int64_t done = 0;
  while (done < total_steps) {
    const std::int64_t chunk = std::min(snap_stride, total_steps - done);
    ec.steps = chunk;
    EvolveResult er = evolve(state, ec);
    state = std::move(er.final_state);
    // Merge the chunk series, shifting times by the chunk start.
    const double t0 = static_cast<double>(done) * cfg.tau;
    const std::size_t skip = series.times.empty() ? 0 : 1;
    for (std::size_t r = skip; r < er.series.times.size(); ++r) {
      series.times.push_back(t0 + er.series.times[r]);
      series.mass.push_back(er.series.mass[r]);
      series.energy_reg.push_back(er.series.energy_reg[r]);
      series.energy_exact.push_back(er.series.energy_exact[r]);
    }
    done += chunk;
    const double t = static_cast<double>(done) * cfg.tau;
    snapshot(state, t);
    snap_times.push_back(t);
    result.momenta.push_back(momentum(state));
  }

  result.final_state = std::move(state);
  write_series_csv(out_dir / "series.csv", series);
  {
    std::ofstream mom(out_dir / "momentum.csv");
    mom << "t,px,py\n";
    for (std::size_t i = 0; i < result.momenta.size(); ++i)
      mom << format_double(snap_times[i]) << "," << format_double(result.momenta[i][0]) << ","
          << format_double(result.momenta[i][1]) << "\n";
  }
  write_meta(cfg, out_dir);
  return result;
}

} // namespace logsplit
