#include "logsplit/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace logsplit {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const double ax = std::abs(x);
  const auto fmt = (ax < 1e-3 || ax >= 1e6) ? std::chars_format::scientific : std::chars_format::fixed;
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, fmt);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

} // namespace

void write_series_csv(std::ostream& os, const ObservableSeries& s) {
  const bool with_energy = s.energy_reg.size() == s.times.size();
  os << "t,mass";
  if (with_energy) os << ",energy_reg,energy_exact";
  if (s.has_errors) os << ",err_l2,err_h1,err_linf,err_density_l1";
  os << "\n";
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    os << format_double(s.times[i]) << "," << format_double(s.mass[i]);
    if (with_energy)
      os << "," << format_double(s.energy_reg[i]) << "," << format_double(s.energy_exact[i]);
    if (s.has_errors)
      os << "," << format_double(s.err_l2[i]) << "," << format_double(s.err_h1[i]) << ","
         << format_double(s.err_linf[i]) << "," << format_double(s.err_density_l1[i]);
    os << "\n";
  }
}

void write_series_csv(const std::filesystem::path& path, const ObservableSeries& s) {
  auto out = open_out(path);
  write_series_csv(out, s);
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "param_name,param_value,err_l2,err_h1,err_linf,err_density_l1,energy_err,fitted_order\n";
  const double order = sweep.fitted_order.count(sweep.meta.norm_used)
                           ? sweep.fitted_order.at(sweep.meta.norm_used)
                           : std::nan("");
  for (const auto& row : sweep.rows) {
    os << sweep.param_name << "," << format_double(row.param) << "," << format_double(row.err.l2)
       << "," << format_double(row.err.h1) << "," << format_double(row.err.linf) << ","
       << format_double(row.err.density_l1) << "," << format_double(row.energy_err) << ","
       << format_double(order) << "\n";
  }
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep) {
  auto out = open_out(path);
  write_sweep_csv(out, sweep);
}

void write_table_csv(std::ostream& os, const EpsTauTable& table) {
  const std::size_t cols = table.tau_values.size();
  os << "eps";
  for (std::size_t j = 0; j < cols; ++j) os << ",err_tau" << j;
  for (std::size_t j = 1; j < cols; ++j) os << ",rate_tau" << j;
  os << ",fitted_order\n";
  for (std::size_t i = 0; i < table.eps_values.size(); ++i) {
    os << format_double(table.eps_values[i]);
    for (std::size_t j = 0; j < cols; ++j) os << "," << format_double(table.err[i][j]);
    for (std::size_t j = 1; j < cols; ++j) os << "," << format_double(table.rate[i][j]);
    os << "," << format_double(table.row_fitted_order[i]) << "\n";
  }
}

void write_table_csv(const std::filesystem::path& path, const EpsTauTable& table) {
  auto out = open_out(path);
  write_table_csv(out, table);
}

void write_field_csv(std::ostream& os, const Field& f) {
  const auto& d = f.domain;
  if (d.dim() == 1) {
    os << "i,x,re,im,density\n";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const auto v = f.values[i];
      os << i << "," << format_double(d.coordinate(0, i)) << "," << format_double(v.real()) << ","
         << format_double(v.imag()) << "," << format_double(std::norm(v)) << "\n";
    }
    return;
  }
  os << "i,j,x,y,re,im,density\n";
  for (std::size_t i = 0; i < d.points(0); ++i) {
    for (std::size_t j = 0; j < d.points(1); ++j) {
      const auto v = f.values[d.index(i, j)];
      os << i << "," << j << "," << format_double(d.coordinate(0, i)) << ","
         << format_double(d.coordinate(1, j)) << "," << format_double(v.real()) << ","
         << format_double(v.imag()) << "," << format_double(std::norm(v)) << "\n";
    }
  }
}

void write_field_csv(const std::filesystem::path& path, const Field& f) {
  auto out = open_out(path);
  write_field_csv(out, f);
}

} // namespace logsplit
