#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <random>

#include "logsplit/analytic.hpp"
#include "logsplit/grid.hpp"

using namespace logsplit;

namespace {

Field random_field(const DomainSpec& d, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f(d);
  for (auto& v : f.values) v = Complex(u(rng), u(rng));
  return f;
}

GaussonSpec unit_gausson_1d() {
  GaussonSpec g;
  g.dim = 1;
  g.lambda = -1.0;
  g.amplitude = std::pow(M_PI, -0.25);
  g.velocity = {1.0, 0.0};
  return g;
}

} // namespace

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(DomainSpec::line(1.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::line(0.0, 1.0, 2), std::invalid_argument);  // < 4 points
  CHECK_THROWS_AS(DomainSpec::line(0.0, 1.0, 9), std::invalid_argument);  // odd
  const auto d = DomainSpec::line(-16.0, 16.0, 2048);
  CHECK(d.spacing(0) == doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK(d.size() == 2048);
  CHECK_THROWS_AS(d.lower(1), std::invalid_argument);
}

TEST_CASE("wavenumbers: frequency ladder") {
  const auto d = DomainSpec::line(-16.0, 16.0, 4); // L = 32
  const auto k = wavenumbers(d, 0);
  REQUIRE(k.size() == 4);
  CHECK(k[0] == 0.0);
  CHECK(k[1] == doctest::Approx(M_PI / 16).epsilon(1e-15));
  CHECK(k[2] == doctest::Approx(-M_PI / 8).epsilon(1e-15));
  CHECK(k[3] == doctest::Approx(-M_PI / 16).epsilon(1e-15));

  const auto d8 = DomainSpec::line(0.0, 2 * M_PI, 8); // unit box
  const auto k8 = wavenumbers(d8, 0);
  const double expect[8] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int m = 0; m < 8; ++m) CHECK(k8[m] == doctest::Approx(expect[m]).epsilon(1e-14));
}

TEST_CASE("wavenumbers: index symmetry except the -N/2 mode") {
  const auto d = DomainSpec::line(-3.0, 7.5, 16);
  const auto k = wavenumbers(d, 0);
  const std::size_t n = k.size();
  for (std::size_t m = 1; m < n / 2; ++m) CHECK(k[m] == doctest::Approx(-k[n - m]).epsilon(1e-15));
  CHECK(k[n / 2] < 0.0); // the unpaired mode
  CHECK_THROWS_AS(wavenumbers(d, 1), std::invalid_argument);
}

TEST_CASE("sample: constant and single mode") {
  const auto d = DomainSpec::line(-16.0, 16.0, 64);
  const Field ones = sample(d, [](Vec2) { return Complex(1.0, 0.0); });
  for (const auto& v : ones.values) CHECK(v == Complex(1.0, 0.0));

  // e^{i k1 x} with the first positive wavenumber is exactly one DFT mode
  // (up to the phase from the grid origin).
  const double k1 = wavenumbers(d, 0)[1];
  const Field mode = sample(d, [&](Vec2 x) { return std::polar(1.0, k1 * x[0]); });
  const auto coeffs = dft_forward(mode);
  CHECK(std::abs(coeffs[1]) == doctest::Approx(64.0).epsilon(1e-12));
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    if (m != 1) CHECK(std::abs(coeffs[m]) < 1e-10);
}

TEST_CASE("sample: Gausson peaks at the grid point nearest the center") {
  auto g = unit_gausson_1d();
  g.center = {0.3, 0.0};
  const auto d = DomainSpec::line(-16.0, 16.0, 2048);
  const Field f = gausson_field(g, d, 0.0);
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.values.size(); ++i)
    if (std::abs(f.values[i]) > std::abs(f.values[best])) best = i;
  // x = 0.3 lies between grid points; nearest one is at index round((0.3+16)*64).
  CHECK(best == static_cast<std::size_t>(std::lround((0.3 + 16.0) * 64)));
}

TEST_CASE("norm_l2 examples") {
  const auto d = DomainSpec::line(-16.0, 16.0, 128);
  const Field ones = sample(d, [](Vec2) { return Complex(1.0, 0.0); });
  CHECK(norm_l2(ones) == doctest::Approx(std::sqrt(32.0)).epsilon(1e-12));
  CHECK(norm_l2(Field(d)) == 0.0);

  // Gaussian-integral oracle: ||u0||^2 = b^2 sqrt(pi/-lambda) = 1.
  const auto fine = DomainSpec::line(-16.0, 16.0, 2048);
  const Field u0 = gausson_field(unit_gausson_1d(), fine, 0.0);
  CHECK(std::abs(norm_l2(u0) - 1.0) < 1e-12);
}

TEST_CASE("norm_l1 / norm_linf examples") {
  const auto d = DomainSpec::line(-16.0, 16.0, 2048);
  const Field ones = sample(d, [](Vec2) { return Complex(1.0, 0.0); });
  CHECK(norm_l1(ones) == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(norm_linf(ones) == 1.0);
  CHECK(norm_l1(Field(d)) == 0.0);
  CHECK(norm_linf(Field(d)) == 0.0);

  Field spike(d);
  spike.values[100] = Complex(2.0, 0.0);
  CHECK(norm_l1(spike) == doctest::Approx(2.0 / 64).epsilon(1e-14));
  CHECK(norm_linf(spike) == 2.0);
}

TEST_CASE("norm_h1: constant, eigenmode, zero") {
  const auto d = DomainSpec::line(-16.0, 16.0, 256);
  const Field c = sample(d, [](Vec2) { return Complex(0.0, 2.5); });
  CHECK(norm_h1(c) == doctest::Approx(2.5 * std::sqrt(32.0)).epsilon(1e-12));
  CHECK(norm_h1(Field(d)) == 0.0);

  const double k = wavenumbers(d, 0)[3];
  const Field mode = sample(d, [&](Vec2 x) { return std::polar(1.0, k * x[0]); });
  CHECK(norm_h1(mode) == doctest::Approx(std::sqrt((1.0 + k * k) * 32.0)).epsilon(1e-12));
}

TEST_CASE("norm_l2_weighted") {
  const auto d = DomainSpec::line(-16.0, 16.0, 2048);
  const Field f = random_field(d, 7);
  CHECK(norm_l2_weighted(f, 0.0) == doctest::Approx(norm_l2(f)).epsilon(1e-13));
  CHECK(norm_l2_weighted(Field(d), 2.0) == 0.0);
  CHECK_THROWS_AS(norm_l2_weighted(f, -1.0), std::invalid_argument);

  Field delta(d);
  delta.values[1024] = 1.0; // x = 0, weight <0>^2 = 1
  CHECK(norm_l2_weighted(delta, 2.0) == doctest::Approx(std::sqrt(1.0 / 64)).epsilon(1e-13));
}

TEST_CASE("trapezoid_integral") {
  const auto d2 = DomainSpec::box({-16.0, -16.0}, {16.0, 16.0}, {32, 32});
  std::vector<double> g(d2.size(), 1.0);
  CHECK(trapezoid_integral(d2, g) == doctest::Approx(1024.0).epsilon(1e-12));
  std::vector<double> z(d2.size(), 0.0);
  CHECK(trapezoid_integral(d2, z) == 0.0);

  const auto d = DomainSpec::line(-16.0, 16.0, 2048);
  const Field u0 = gausson_field(unit_gausson_1d(), d, 0.0);
  std::vector<double> rho(d.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(u0.values[i]);
  CHECK(std::abs(trapezoid_integral(d, rho) - 1.0) < 1e-12); // same Gaussian oracle
}

TEST_CASE("Parseval and transform round-trip") {
  for (const auto& d : {DomainSpec::line(-16.0, 16.0, 64), DomainSpec::line(-1.0, 2.0, 48),
                        DomainSpec::box({-2.0, -3.0}, {2.0, 3.0}, {8, 16})}) {
    const Field f = random_field(d, 11 + d.size());
    const auto coeffs = dft_forward(f);

    double sum2 = 0.0;
    for (const auto& c : coeffs) sum2 += std::norm(c);
    const double parseval = std::sqrt(d.cell_volume() * sum2 / static_cast<double>(d.size()));
    CHECK(parseval == doctest::Approx(norm_l2(f)).epsilon(1e-12));

    const Field back = dft_inverse(d, coeffs);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
    CHECK(worst < 1e-12 * norm_linf(f));
  }
}

TEST_CASE("norm_h1 >= norm_l2; trapezoid of |f|^2 matches the l2 norm") {
  const auto d = DomainSpec::line(-5.0, 5.0, 128);
  for (unsigned seed : {1u, 2u, 3u}) {
    const Field f = random_field(d, seed);
    CHECK(norm_h1(f) >= norm_l2(f));
    std::vector<double> rho(f.values.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(f.values[i]);
    const double a = trapezoid_integral(d, rho);
    const double b = norm_l2(f) * norm_l2(f);
    CHECK(std::abs(a - b) <= 1e-14 * std::max(a, b));
  }
}
