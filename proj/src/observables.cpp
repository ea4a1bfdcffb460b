#include "logsplit/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace logsplit {

double mass(const Field& f) {
  const double n = norm_l2(f);
  return n * n;
}

double energy(const Field& f, double lambda, const Regularization& reg) {
  double kinetic = 0.0;
  for (int a = 0; a < f.domain.dim(); ++a) {
    const double dn = norm_l2(spectral_derivative(f, a));
    kinetic += dn * dn;
  }
  std::vector<double> density(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) density[i] = reg.big_f(std::norm(f.values[i]));
  return kinetic + lambda * trapezoid_integral(f.domain, density);
}

ErrorNorms error_norms(const Field& a, const Field& b) {
  if (!(a.domain == b.domain)) throw std::invalid_argument("error_norms: domain mismatch");
  Field diff(a.domain);
  Field density_diff(a.domain);
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    diff.values[i] = a.values[i] - b.values[i];
    density_diff.values[i] = std::norm(a.values[i]) - std::norm(b.values[i]);
  }
  ErrorNorms out;
  out.l2 = norm_l2(diff);
  out.h1 = norm_h1(diff);
  out.linf = norm_linf(diff);
  out.density_l1 = norm_l1(density_diff);
  return out;
}

double energy_error(const Field& f0, double lambda, const Regularization& reg) {
  return std::abs(energy(f0, lambda, Regularization::exact_log()) - energy(f0, lambda, reg));
}

double mirror_density_defect(const Field& f, int axis) {
  const auto& d = f.domain;
  if (axis < 0 || axis >= d.dim()) throw std::invalid_argument("mirror_density_defect: axis out of range");
  if (std::abs(d.lower(axis) + d.upper(axis)) > 1e-12 * std::abs(d.upper(axis)))
    throw std::invalid_argument("mirror_density_defect: box must be symmetric about 0 on this axis");
  const std::size_t n = d.points(axis);
  double worst = 0.0;
  for (std::size_t idx = 0; idx < d.size(); ++idx) {
    auto ij = d.unravel(idx);
    ij[axis] = (n - ij[axis]) % n;
    const std::size_t mirrored = d.index(ij[0], ij[1]);
    worst = std::max(worst, std::abs(std::norm(f.values[idx]) - std::norm(f.values[mirrored])));
  }
  return worst;
}

Vec2 momentum(const Field& f) {
  Vec2 p{0.0, 0.0};
  for (int a = 0; a < f.domain.dim(); ++a) {
    const Field df = spectral_derivative(f, a);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      acc += std::imag(std::conj(f.values[i]) * df.values[i]);
    p[a] = f.domain.cell_volume() * acc;
  }
  return p;
}

} // namespace logsplit
