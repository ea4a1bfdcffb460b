#pragma once

#include <span>

#include "logsplit/grid.hpp"

// Closed-form moving Gausson solutions of the logarithmic Schroedinger
// equation i u_t = -Lap(u) + lambda * u * ln|u|^2:
//
//   u(x,t) = b * exp( i*(x.v - (a_d + |v|^2) t) + (lambda/2)|x - x0 - 2vt|^2 ),
//   a_d = -lambda * (d - ln(b^2)),
//
// an exact solution for any amplitude b > 0 and lambda < 0; the density
// peak travels at speed 2|v|. Superpositions of Gaussons are exact only
// at t = 0 and serve as initial data for interaction studies.

namespace logsplit {

struct GaussonSpec {
  int dim = 1;
  double lambda = -1.0;
  double amplitude = 1.0; // b > 0
  Vec2 velocity{};
  Vec2 center{};

  // Throws std::invalid_argument unless lambda < 0, amplitude > 0, dim in {1,2}.
  void validate() const;
};

// Amplitude giving unit mass: b = (-lambda*pi)^(-d/4).
double unit_mass_amplitude(int dim, double lambda);

// a_d = -lambda * (d - ln(b^2)).
double decay_constant(const GaussonSpec& spec);

Complex gausson_value(const GaussonSpec& spec, Vec2 x, double t);

// Grid samples of the Gausson; warns on stderr if the tail at the box edge
// exceeds 1e-12 of the peak (the sampling never wraps tails around the box).
Field gausson_field(const GaussonSpec& spec, const DomainSpec& domain, double t);

// Pointwise sum of Gaussons. Only valid as initial data: t must be 0.
Field superpose(std::span<const GaussonSpec> specs, const DomainSpec& domain, double t = 0.0);

} // namespace logsplit
