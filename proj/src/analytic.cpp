#include "logsplit/analytic.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace logsplit {

void GaussonSpec::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("GaussonSpec: dim must be 1 or 2");
  if (!(lambda < 0.0)) throw std::invalid_argument("GaussonSpec: lambda must be < 0");
  if (!(amplitude > 0.0)) throw std::invalid_argument("GaussonSpec: amplitude must be > 0");
}

double unit_mass_amplitude(int dim, double lambda) {
  if (!(lambda < 0.0)) throw std::invalid_argument("unit_mass_amplitude: lambda must be < 0");
  return std::pow(-lambda * M_PI, -0.25 * dim);
}

double decay_constant(const GaussonSpec& spec) {
  spec.validate();
  return -spec.lambda * (spec.dim - std::log(spec.amplitude * spec.amplitude));
}

Complex gausson_value(const GaussonSpec& spec, Vec2 x, double t) {
  const double a_d = decay_constant(spec);
  double xv = 0.0, v2 = 0.0, r2 = 0.0;
  for (int a = 0; a < spec.dim; ++a) {
    xv += x[a] * spec.velocity[a];
    v2 += spec.velocity[a] * spec.velocity[a];
    const double dx = x[a] - spec.center[a] - 2.0 * spec.velocity[a] * t;
    r2 += dx * dx;
  }
  const double phase = xv - (a_d + v2) * t;
  return std::polar(spec.amplitude * std::exp(0.5 * spec.lambda * r2), phase);
}

namespace {

// Largest tail modulus over the boundary of the box relative to the peak b.
double edge_tail_ratio(const GaussonSpec& spec, const DomainSpec& domain, double t) {
  double worst = 0.0;
  for (int a = 0; a < spec.dim; ++a) {
    for (double edge : {domain.lower(a), domain.upper(a)}) {
      Vec2 x = spec.center;
      for (int b = 0; b < spec.dim; ++b) x[b] += 2.0 * spec.velocity[b] * t;
      x[a] = edge;
      worst = std::max(worst, std::abs(gausson_value(spec, x, t)) / spec.amplitude);
    }
  }
  return worst;
}

} // namespace

Field gausson_field(const GaussonSpec& spec, const DomainSpec& domain, double t) {
  spec.validate();
  if (spec.dim != domain.dim())
    throw std::invalid_argument("gausson_field: spec and domain dimension mismatch");
  if (edge_tail_ratio(spec, domain, t) > 1e-12)
    std::cerr << "warning: Gausson tail at the box edge exceeds 1e-12 of the peak; "
                 "periodic truncation error is not negligible\n";
  return sample(domain, [&](Vec2 x) { return gausson_value(spec, x, t); });
}

Field superpose(std::span<const GaussonSpec> specs, const DomainSpec& domain, double t) {
  if (t != 0.0)
    throw std::invalid_argument("superpose: Gausson sums are exact initial data at t = 0 only");
  if (specs.empty()) throw std::invalid_argument("superpose: need at least one Gausson");
  Field out(domain);
  for (const auto& spec : specs) {
    spec.validate();
    if (spec.dim != domain.dim())
      throw std::invalid_argument("superpose: spec and domain dimension mismatch");
    const std::size_t n = domain.size();
    for (std::size_t idx = 0; idx < n; ++idx)
      out.values[idx] += gausson_value(spec, domain.position(idx), t);
  }
  return out;
}

} // namespace logsplit
