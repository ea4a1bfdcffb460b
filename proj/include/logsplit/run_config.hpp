#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "logsplit/analytic.hpp"
#include "logsplit/grid.hpp"
#include "logsplit/integrators.hpp"

namespace logsplit {

// How sweep errors are referenced: against the analytic Gausson solution of
// the exact equation, or against a fine-step Strang solve of the same
// regularized model (same eps).
enum class ReferenceKind { AnalyticGausson, FineStrang };

std::string to_string(ReferenceKind ref);
ReferenceKind reference_from_string(const std::string& name);

// A fully resolved experiment description. Defaults reproduce the standard
// 1D setup: lambda = -1, Omega = [-16,16], h = 1/64, Strang (BAB) stepping
// of the local-energy model with n = 2, and a single unit-mass Gausson with
// velocity 1 as initial data.
struct RunConfig {
  int dim = 1;
  Vec2 lower{-16.0, -16.0};
  Vec2 upper{16.0, 16.0};
  std::array<std::size_t, 2> points{2048, 512};

  double lambda = -1.0;

  RegKind reg_kind = RegKind::LocalEnergy;
  int reg_n = 2;
  double reg_eps = 0.025;

  SplitScheme scheme = SplitScheme::StrangBAB;
  double tau = 1e-3;
  double total_time = 3.0;

  std::vector<GaussonSpec> initial; // filled with the default Gausson when empty

  std::int64_t record_every = 1;
  ReferenceKind reference = ReferenceKind::AnalyticGausson;
  double tau_ref = 0.0; // 0 = automatic (min(taus)/100, capped)
  std::string fit_norm = "l2";
  int workers = 0; // 0 = hardware concurrency; env LOGSPLIT_WORKERS overrides
  std::string out_dir = ".";

  DomainSpec domain() const;
  Regularization regularization() const;
  std::int64_t steps() const; // round(T/tau), validated integral
  Field initial_field() const;
  // Analytic solution matching the initial data at time t (single-Gausson
  // initial data only; throws otherwise).
  Field oracle_field(double t) const;
  bool has_analytic_oracle() const { return initial.size() <= 1; } // empty = default Gausson

  // Throws std::invalid_argument naming the offending field and constraint.
  void validate() const;
};

// Strict JSON parsing: unknown keys are an error listing them, every
// invariant violation names the field and constraint. Missing keys fall
// back to the defaults above.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig parse_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& cfg);

// Resolved config plus norm conventions and version, written as meta.json
// next to every output.
nlohmann::json meta_json(const RunConfig& cfg);
void write_meta(const RunConfig& cfg, const std::filesystem::path& out_dir);

// Worker count resolution: LOGSPLIT_WORKERS env var overrides `requested`;
// 0 means hardware concurrency.
int resolve_workers(int requested);

} // namespace logsplit
