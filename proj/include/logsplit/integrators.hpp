#pragma once

#include <cstdint>
#include <limits>
#include <functional>
#include <stdexcept>
#include <string>

#include "logsplit/grid.hpp"
#include "logsplit/observables.hpp"
#include "logsplit/regularization.hpp"

// Split-step integrators for i u_t = -Lap(u) + lambda * u * f_reg(|u|^2).
// The two exact sub-flows are
//   Phi_A^t: multiply the DFT coefficient of mode k by exp(-i t |k|^2)
//            (free Schroedinger flow, an isometry of every H^s norm),
//   Phi_B^t: u -> u * exp(-i t lambda f_reg(|u|^2))
//            (pointwise phase rotation, preserves |u| exactly),
// composed per time step according to the scheme. LieAB applies B then A.

namespace logsplit {

enum class SplitScheme { LieAB, LieBA, StrangBAB, StrangABA };

std::string to_string(SplitScheme scheme);
SplitScheme scheme_from_string(const std::string& name);

struct EvolveConfig {
  double tau = 1e-3;
  std::int64_t steps = 0;
  double lambda = -1.0;
  Regularization reg = Regularization::local_energy(2, 0.025);
  SplitScheme scheme = SplitScheme::StrangBAB;

  // Observable recording stride; <= 0 records only the initial and final
  // states. The final step is always recorded.
  std::int64_t record_every = 1;
  // Blow-up guard: abort when max|u| exceeds this.
  double max_modulus_guard = 1e6;
  // Upper bound tau <= tau_max (the stability-theory step restriction).
  double tau_max = std::numeric_limits<double>::infinity();

  void validate() const; // 0 < tau <= tau_max, steps >= 0
};

// Raised when the state stops being finite (or exceeds the modulus guard).
struct BlowupError : std::runtime_error {
  BlowupError(std::int64_t step_index, double max_modulus);
  std::int64_t step = 0;
};

Field flow_a(const Field& f, double t);
Field flow_b(const Field& f, double t, double lambda, const Regularization& reg);

// One step of cfg.scheme with time step tau (cfg.tau by default). Exposed
// with an explicit tau so callers can compose reversed/rescaled steps.
Field step(const Field& f, const EvolveConfig& cfg);
Field step(const Field& f, const EvolveConfig& cfg, double tau);

struct EvolveObservers {
  bool record_energy = true;
  // Exact solution at time t, enables the error columns.
  std::function<Field(double)> oracle;
};

struct EvolveResult {
  Field final_state;
  ObservableSeries series;
};

// Applies cfg.steps steps from f0; records observables at stride
// cfg.record_every. Time is accumulated as t_k = k * tau.
EvolveResult evolve(const Field& f0, const EvolveConfig& cfg, const EvolveObservers& observers = {});

} // namespace logsplit
