#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Periodic uniform grids, discrete Fourier transforms and discrete
// norms/integrals. Conventions used throughout the library:
//   - the grid on [lower, upper) excludes the upper edge (periodic
//     identification), x_i = lower + i*h with h = (upper-lower)/N;
//   - forward DFT is unnormalized, the inverse carries the 1/prod(N)
//     factor;
//   - wavenumbers are k_m = 2*pi*m~/L with the signed DFT index
//     m~ = 0, 1, ..., N/2-1, -N/2, ..., -1;
//   - all quadrature is the periodic trapezoidal rule, i.e. prod(h) * sum.

namespace logsplit {

using Complex = std::complex<double>;

// Position in up to two dimensions; unused components are zero.
using Vec2 = std::array<double, 2>;

class DomainSpec {
public:
  // Throws std::invalid_argument unless upper > lower and every axis has an
  // even number of points >= 4.
  DomainSpec(int dim, Vec2 lower, Vec2 upper, std::array<std::size_t, 2> points);

  static DomainSpec line(double lower, double upper, std::size_t points);
  static DomainSpec box(Vec2 lower, Vec2 upper, std::array<std::size_t, 2> points);

  int dim() const { return dim_; }
  double lower(int axis) const { return lower_[check_axis(axis)]; }
  double upper(int axis) const { return upper_[check_axis(axis)]; }
  std::size_t points(int axis) const { return points_[check_axis(axis)]; }
  double length(int axis) const { return upper(axis) - lower(axis); }
  double spacing(int axis) const { return length(axis) / static_cast<double>(points(axis)); }

  std::size_t size() const;        // total number of grid points
  double cell_volume() const;      // prod of spacings

  // Row-major indexing over axes (axis 0 slowest).
  std::size_t index(std::size_t i0, std::size_t i1 = 0) const;
  std::array<std::size_t, 2> unravel(std::size_t idx) const;
  double coordinate(int axis, std::size_t i) const { return lower(axis) + spacing(axis) * static_cast<double>(i); }
  Vec2 position(std::size_t idx) const;

  bool operator==(const DomainSpec&) const = default;

private:
  int check_axis(int axis) const;

  int dim_;
  Vec2 lower_{};
  Vec2 upper_{};
  std::array<std::size_t, 2> points_{};
};

// Complex-valued grid function, values in row-major order.
struct Field {
  Field() : domain(DomainSpec::line(0.0, 1.0, 4)) {}
  explicit Field(const DomainSpec& d) : domain(d), values(d.size()) {}
  Field(const DomainSpec& d, std::vector<Complex> v);

  DomainSpec domain;
  std::vector<Complex> values;
};

// Signed DFT frequency ladder for one axis: 2*pi/L * (0, 1, ..., N/2-1, -N/2, ..., -1).
std::vector<double> wavenumbers(const DomainSpec& domain, int axis);

// |k|^2 per grid mode in row-major layout (the spectral symbol of -Laplacian).
std::vector<double> wavenumber_squares(const DomainSpec& domain);

template <typename F>
Field sample(const DomainSpec& domain, F&& fn) {
  Field out(domain);
  const std::size_t n = domain.size();
  for (std::size_t idx = 0; idx < n; ++idx) out.values[idx] = fn(domain.position(idx));
  return out;
}

// Unnormalized forward transform and 1/prod(N) inverse (FFTW-backed).
std::vector<Complex> dft_forward(const Field& f);
Field dft_inverse(const DomainSpec& domain, std::span<const Complex> coeffs);

// Multiplies DFT coefficients by i*k along `axis`.
Field spectral_derivative(const Field& f, int axis);

double norm_l2(const Field& f);
double norm_l1(const Field& f);
double norm_linf(const Field& f);
// sqrt(||f||_2^2 + sum_axes ||d_axis f||_2^2) with spectral derivatives.
double norm_h1(const Field& f);
// sqrt(prod(h) * sum (1+|x|^2)^alpha |f|^2), alpha >= 0.
double norm_l2_weighted(const Field& f, double alpha);

// On the periodic uniform grid the trapezoidal rule is the scaled sum.
double trapezoid_integral(const DomainSpec& domain, std::span<const double> g);

// Reusable transform for one grid shape; copies through internal aligned
// buffers, so a single instance must not be shared across threads.
class Spectral {
public:
  explicit Spectral(const DomainSpec& domain);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  void forward(std::span<const Complex> in, std::span<Complex> out);
  void inverse(std::span<const Complex> in, std::span<Complex> out);
  std::size_t size() const { return size_; }

private:
  struct Impl;
  Impl* impl_;
  std::size_t size_;
};

// Per-thread cached Spectral for the grid shape of `domain`.
Spectral& shared_spectral(const DomainSpec& domain);

} // namespace logsplit
