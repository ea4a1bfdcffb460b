#include "logsplit/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace logsplit {

DomainSpec::DomainSpec(int dim, Vec2 lower, Vec2 upper, std::array<std::size_t, 2> points)
    : dim_(dim), lower_(lower), upper_(upper), points_(points) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("DomainSpec: dim must be 1 or 2");
  for (int a = 0; a < dim_; ++a) {
    if (!(upper_[a] > lower_[a]))
      throw std::invalid_argument("DomainSpec: upper must exceed lower on axis " + std::to_string(a));
    if (points_[a] < 4 || points_[a] % 2 != 0)
      throw std::invalid_argument("DomainSpec: points must be even and >= 4 on axis " + std::to_string(a));
  }
  for (int a = dim_; a < 2; ++a) {
    lower_[a] = 0.0;
    upper_[a] = 1.0;
    points_[a] = 1;
  }
}

DomainSpec DomainSpec::line(double lower, double upper, std::size_t points) {
  return DomainSpec(1, {lower, 0.0}, {upper, 1.0}, {points, 1});
}

DomainSpec DomainSpec::box(Vec2 lower, Vec2 upper, std::array<std::size_t, 2> points) {
  return DomainSpec(2, lower, upper, points);
}

std::size_t DomainSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim_; ++a) n *= points_[a];
  return n;
}

double DomainSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= spacing(a);
  return v;
}

std::size_t DomainSpec::index(std::size_t i0, std::size_t i1) const {
  return dim_ == 1 ? i0 : i0 * points_[1] + i1;
}

std::array<std::size_t, 2> DomainSpec::unravel(std::size_t idx) const {
  if (dim_ == 1) return {idx, 0};
  return {idx / points_[1], idx % points_[1]};
}

Vec2 DomainSpec::position(std::size_t idx) const {
  const auto ij = unravel(idx);
  Vec2 x{coordinate(0, ij[0]), 0.0};
  if (dim_ == 2) x[1] = coordinate(1, ij[1]);
  return x;
}

int DomainSpec::check_axis(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::invalid_argument("axis out of range");
  return axis;
}

Field::Field(const DomainSpec& d, std::vector<Complex> v) : domain(d), values(std::move(v)) {
  if (values.size() != domain.size()) throw std::invalid_argument("Field: values size does not match grid");
}

std::vector<double> wavenumbers(const DomainSpec& domain, int axis) {
  const std::size_t n = domain.points(axis);
  const double scale = 2.0 * M_PI / domain.length(axis);
  std::vector<double> k(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto signed_index = m < n / 2 ? static_cast<double>(m)
                                        : static_cast<double>(m) - static_cast<double>(n);
    k[m] = scale * signed_index;
  }
  return k;
}

std::vector<double> wavenumber_squares(const DomainSpec& domain) {
  std::vector<double> k2(domain.size());
  const auto k0 = wavenumbers(domain, 0);
  if (domain.dim() == 1) {
    for (std::size_t m = 0; m < k0.size(); ++m) k2[m] = k0[m] * k0[m];
    return k2;
  }
  const auto k1 = wavenumbers(domain, 1);
  for (std::size_t i = 0; i < k0.size(); ++i)
    for (std::size_t j = 0; j < k1.size(); ++j) k2[i * k1.size() + j] = k0[i] * k0[i] + k1[j] * k1[j];
  return k2;
}

// --- FFTW backing -----------------------------------------------------------

namespace {
// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

struct Spectral::Impl {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
};

Spectral::Spectral(const DomainSpec& domain) : impl_(new Impl), size_(domain.size()) {
  impl_->buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
  if (!impl_->buf) throw std::bad_alloc();
  int dims[2] = {static_cast<int>(domain.points(0)), 0};
  if (domain.dim() == 2) dims[1] = static_cast<int>(domain.points(1));
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->fwd = fftw_plan_dft(domain.dim(), dims, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft(domain.dim(), dims, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("FFTW plan creation failed");
}

Spectral::~Spectral() { delete impl_; }

void Spectral::forward(std::span<const Complex> in, std::span<Complex> out) {
  if (in.size() != size_ || out.size() != size_) throw std::invalid_argument("Spectral: size mismatch");
  std::memcpy(impl_->buf, in.data(), sizeof(Complex) * size_);
  fftw_execute(impl_->fwd);
  std::memcpy(out.data(), impl_->buf, sizeof(Complex) * size_);
}

void Spectral::inverse(std::span<const Complex> in, std::span<Complex> out) {
  if (in.size() != size_ || out.size() != size_) throw std::invalid_argument("Spectral: size mismatch");
  std::memcpy(impl_->buf, in.data(), sizeof(Complex) * size_);
  fftw_execute(impl_->bwd);
  const double scale = 1.0 / static_cast<double>(size_);
  auto* b = reinterpret_cast<Complex*>(impl_->buf);
  for (std::size_t i = 0; i < size_; ++i) out[i] = b[i] * scale;
}

Spectral& shared_spectral(const DomainSpec& domain) {
  using Key = std::array<std::size_t, 3>;
  thread_local std::map<Key, std::unique_ptr<Spectral>> cache;
  Key key{static_cast<std::size_t>(domain.dim()), domain.points(0),
          domain.dim() == 2 ? domain.points(1) : 0};
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<Spectral>(domain);
  return *slot;
}

std::vector<Complex> dft_forward(const Field& f) {
  std::vector<Complex> out(f.values.size());
  shared_spectral(f.domain).forward(f.values, out);
  return out;
}

Field dft_inverse(const DomainSpec& domain, std::span<const Complex> coeffs) {
  Field out(domain);
  shared_spectral(domain).inverse(coeffs, out.values);
  return out;
}

Field spectral_derivative(const Field& f, int axis) {
  const auto& d = f.domain;
  if (axis < 0 || axis >= d.dim()) throw std::invalid_argument("spectral_derivative: axis out of range");
  auto coeffs = dft_forward(f);
  const auto k = wavenumbers(d, axis);
  if (d.dim() == 1) {
    for (std::size_t m = 0; m < coeffs.size(); ++m) coeffs[m] *= Complex(0.0, k[m]);
  } else {
    const std::size_t n1 = d.points(1);
    for (std::size_t i = 0; i < d.points(0); ++i)
      for (std::size_t j = 0; j < n1; ++j)
        coeffs[i * n1 + j] *= Complex(0.0, axis == 0 ? k[i] : k[j]);
  }
  return dft_inverse(d, coeffs);
}

double norm_l2(const Field& f) {
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::norm(v);
  return std::sqrt(f.domain.cell_volume() * acc);
}

double norm_l1(const Field& f) {
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::abs(v);
  return f.domain.cell_volume() * acc;
}

double norm_linf(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double norm_h1(const Field& f) {
  double acc = norm_l2(f);
  acc *= acc;
  for (int a = 0; a < f.domain.dim(); ++a) {
    const double dn = norm_l2(spectral_derivative(f, a));
    acc += dn * dn;
  }
  return std::sqrt(acc);
}

double norm_l2_weighted(const Field& f, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("norm_l2_weighted: alpha must be >= 0");
  double acc = 0.0;
  const std::size_t n = f.domain.size();
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Vec2 x = f.domain.position(idx);
    const double x2 = x[0] * x[0] + x[1] * x[1];
    acc += std::pow(1.0 + x2, alpha) * std::norm(f.values[idx]);
  }
  return std::sqrt(f.domain.cell_volume() * acc);
}

double trapezoid_integral(const DomainSpec& domain, std::span<const double> g) {
  if (g.size() != domain.size()) throw std::invalid_argument("trapezoid_integral: size mismatch");
  double acc = 0.0;
  for (double v : g) acc += v;
  return domain.cell_volume() * acc;
}

} // namespace logsplit
