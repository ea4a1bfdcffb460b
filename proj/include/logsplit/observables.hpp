#pragma once

#include <vector>

#include "logsplit/grid.hpp"
#include "logsplit/regularization.hpp"

namespace logsplit {

// Time series of recorded observables; all columns share the length of
// `times` and times are strictly increasing. Error columns are filled only
// when an oracle was registered with the evolution.
struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy_reg;
  std::vector<double> energy_exact;
  bool has_errors = false;
  std::vector<double> err_l2;
  std::vector<double> err_h1;
  std::vector<double> err_linf;
  std::vector<double> err_density_l1;
};

struct ErrorNorms {
  double l2 = 0.0;
  double h1 = 0.0;
  double linf = 0.0;
  double density_l1 = 0.0; // L1 norm of |a|^2 - |b|^2
};

// ||f||_2^2.
double mass(const Field& f);

// E(f) = sum_axes ||d_axis f||_2^2 + lambda * integral of F_reg(|f|^2);
// kinetic part by spectral derivatives, potential by the trapezoidal rule.
double energy(const Field& f, double lambda, const Regularization& reg);

// Error functionals between two fields on the same grid.
ErrorNorms error_norms(const Field& a, const Field& b);

// |E_exact(f0) - E_reg(f0)| at fixed lambda.
double energy_error(const Field& f0, double lambda, const Regularization& reg);

// Im integral of conj(u) * grad(u), conserved by the periodic split flows.
Vec2 momentum(const Field& f);

// max |rho(x) - rho(mirror x)| where the mirror flips `axis` about the box
// center (index i -> N - i mod N); requires lower = -upper on that axis.
double mirror_density_defect(const Field& f, int axis);

} // namespace logsplit
