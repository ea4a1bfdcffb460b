#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "logsplit/harness.hpp"
#include "logsplit/observables.hpp"

namespace logsplit {

// Shortest round-trip decimal representation of a binary64 value;
// scientific notation for 0 < |x| < 1e-3 or |x| >= 1e6, plain decimal
// otherwise.
std::string format_double(double x);

void write_series_csv(std::ostream& os, const ObservableSeries& series);
void write_series_csv(const std::filesystem::path& path, const ObservableSeries& series);

// Columns: param_name, param_value, err_l2, err_h1, err_linf,
// err_density_l1, energy_err, fitted_order (the fit-norm order, repeated).
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep);

// Columns: eps, err_tau0..err_tau{J-1}, rate_tau1..rate_tau{J-1}, fitted_order.
void write_table_csv(std::ostream& os, const EpsTauTable& table);
void write_table_csv(const std::filesystem::path& path, const EpsTauTable& table);

// Columns 1D: i, x, re, im, density; 2D: i, j, x, y, re, im, density.
void write_field_csv(std::ostream& os, const Field& f);
void write_field_csv(const std::filesystem::path& path, const Field& f);

} // namespace logsplit
