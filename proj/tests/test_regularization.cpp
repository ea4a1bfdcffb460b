#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "logsplit/regularization.hpp"

using namespace logsplit;

namespace {

// Independent term-by-term evaluation of Q_n (no Horner), oracle for q_poly.
double q_poly_naive(int n, double eps, double rho) {
  const double s = 1.0 - rho / (eps * eps);
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) sum += std::pow(s, k) / k;
  return std::log(eps * eps) - 1.0 - sum;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Closed-form k-th derivatives of both density branches at rho = eps^2.
// F(rho) = rho ln rho - rho:  F' = ln rho, F^(k) = (-1)^k (k-2)! rho^{1-k}, k >= 2.
double exact_branch_derivative(int k, double eps2) {
  if (k == 0) return eps2 * std::log(eps2) - eps2;
  if (k == 1) return std::log(eps2);
  double fact = 1.0;
  for (int i = 2; i <= k - 2; ++i) fact *= i;
  return (k % 2 == 0 ? fact : -fact) * std::pow(eps2, 1.0 - k);
}

// Q_n^(j)(eps^2) vanishes for j > n and equals (-1)^{j+1} (j-1)! eps^{-2j} for
// 1 <= j <= n; the polynomial branch P = rho*Q_n has
// P^(k) = rho Q_n^(k) + k Q_n^(k-1).
double taylor_q_derivative(int j, int n, double eps2) {
  if (j == 0) return std::log(eps2) - 1.0;
  if (j > n) return 0.0;
  double fact = 1.0;
  for (int i = 2; i <= j - 1; ++i) fact *= i;
  return (j % 2 == 0 ? -fact : fact) * std::pow(eps2, -static_cast<double>(j));
}

double poly_branch_derivative(int k, int n, double eps2) {
  return eps2 * taylor_q_derivative(k, n, eps2) + k * taylor_q_derivative(k - 1, n, eps2);
}

} // namespace

TEST_CASE("regularization construction and validation") {
  CHECK_THROWS_AS(Regularization::local_energy(1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Regularization::local_energy(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Regularization::local_energy(2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Regularization::sqrt_shift(-0.1), std::invalid_argument);
  CHECK(Regularization::local_energy(2, 1.0).epsilon() == 1.0);
  CHECK(reg_kind_from_string("square_shift") == RegKind::SquareShift);
  CHECK_THROWS_AS(reg_kind_from_string("bogus"), std::invalid_argument);
  CHECK(to_string(RegKind::LocalEnergy) == "local_energy");
}

TEST_CASE("q_poly: values and independent summation oracle") {
  // At rho = eps^2 the whole sum vanishes.
  CHECK(q_poly(3, 0.1, 0.01) == doctest::Approx(std::log(0.01) - 1.0).epsilon(1e-15));
  // n = 2, eps = 0.1, rho = 0: ln(0.01) - 1 - (1 + 1/2).
  CHECK(q_poly(2, 0.1, 0.0) == doctest::Approx(-7.105170185988091).epsilon(1e-14));

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int n : {2, 3, 5, 8, 16}) {
    for (double eps : {0.5, 0.1, 1e-3}) {
      for (int trial = 0; trial < 50; ++trial) {
        const double rho = u01(rng) * eps * eps;
        CHECK(rel_diff(q_poly(n, eps, rho), q_poly_naive(n, eps, rho)) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(q_poly(2, 0.1, 0.02), std::invalid_argument);
  CHECK_THROWS_AS(q_poly(2, 0.1, -1e-9), std::invalid_argument);
  CHECK_THROWS_AS(q_poly(1, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("q_poly derivative matches (1/rho)(1 - s^n) and finite differences") {
  for (int n : {2, 3, 6}) {
    for (double frac : {0.2, 0.5, 0.9}) {
      const double eps = 0.1, eps2 = eps * eps;
      const double rho = frac * eps2;
      const double s = 1.0 - rho / eps2;
      const double closed = (1.0 - std::pow(s, n)) / rho;
      CHECK(rel_diff(q_poly_prime(n, eps, rho), closed) < 1e-12);
      const double h = 1e-7 * eps2;
      const double fd = (q_poly(n, eps, rho + h) - q_poly(n, eps, rho - h)) / (2 * h);
      CHECK(rel_diff(q_poly_prime(n, eps, rho), fd) < 1e-6);
    }
  }
  // Stable at rho = 0 where the closed form above cancels: limit n/eps^2.
  CHECK(q_poly_prime(4, 0.1, 0.0) == doctest::Approx(400.0).epsilon(1e-13));
}

TEST_CASE("f_value examples") {
  for (int n : {2, 3, 8}) {
    const auto reg = Regularization::local_energy(n, 0.1);
    // Continuity at the matching point: f(eps^2) = 2 ln eps.
    CHECK(reg.f_value(0.01) == doctest::Approx(2.0 * std::log(0.1)).epsilon(1e-15));
  }
  const auto le2 = Regularization::local_energy(2, 0.1);
  CHECK(le2.f_value(0.0) == doctest::Approx(-7.105170185988091).epsilon(1e-14));
  CHECK(le2.f_value(0.0) == doctest::Approx(q_poly(2, 0.1, 0.0)).epsilon(1e-15));

  const auto sq = Regularization::square_shift(0.05);
  CHECK(sq.f_value(0.0) == doctest::Approx(2.0 * std::log(0.05)).epsilon(1e-15));

  const auto le4 = Regularization::local_energy(4, 0.1);
  CHECK(le4.f_value(0.02) == doctest::Approx(std::log(0.02)).epsilon(1e-15)); // log branch

  CHECK_THROWS_AS(Regularization::exact_log().f_value(0.0), std::domain_error);
  CHECK_THROWS_AS(le2.f_value(-1.0), std::invalid_argument);
  CHECK(Regularization::exact_log().f_value(2.5) == doctest::Approx(std::log(2.5)));
  CHECK(Regularization::sqrt_shift(0.1).f_value(0.04) ==
        doctest::Approx(2.0 * std::log(0.1 + 0.2)).epsilon(1e-15));
}

TEST_CASE("f_prime examples") {
  for (int n : {2, 3, 8}) {
    const auto reg = Regularization::local_energy(n, 0.1);
    CHECK(reg.f_prime(0.0) == doctest::Approx(2.0 * n / 0.01).epsilon(1e-14));
    // Both branches give 1/eps^2 at the matching point.
    CHECK(reg.f_prime(0.01) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(reg.f_prime(0.01 * (1.0 - 1e-11)) == doctest::Approx(100.0).epsilon(1e-9));
  }
  CHECK(Regularization::square_shift(0.1).f_prime(0.0) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK_THROWS_AS(Regularization::sqrt_shift(0.1).f_prime(0.0), std::domain_error);
  CHECK_THROWS_AS(Regularization::exact_log().f_prime(0.0), std::domain_error);
}

TEST_CASE("f_second matches finite differences of f_prime") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::vector<Regularization> regs = {
      Regularization::local_energy(2, 0.1), Regularization::local_energy(5, 0.1),
      Regularization::sqrt_shift(0.1), Regularization::square_shift(0.1),
      Regularization::exact_log()};
  for (const auto& reg : regs) {
    for (int trial = 0; trial < 20; ++trial) {
      const double rho = 1e-3 + u01(rng); // away from branch point and 0
      if (reg.kind() == RegKind::LocalEnergy && std::abs(rho - 0.01) < 1e-3) continue;
      const double h = 1e-6 * std::max(rho, 1e-2);
      const double fd = (reg.f_prime(rho + h) - reg.f_prime(rho - h)) / (2 * h);
      CHECK(rel_diff(reg.f_second(rho), fd) < 1e-5);
    }
  }
  // Poly-branch spot value: n = 2 gives f'' = -3/eps^4 throughout [0, eps^2).
  CHECK(Regularization::local_energy(2, 0.1).f_second(0.005) ==
        doctest::Approx(-3.0e4).epsilon(1e-12));
}

TEST_CASE("big_f examples") {
  const std::vector<Regularization> regs = {
      Regularization::exact_log(), Regularization::local_energy(3, 0.1),
      Regularization::sqrt_shift(0.1), Regularization::square_shift(0.1)};
  for (const auto& reg : regs) CHECK(reg.big_f(0.0) == 0.0);

  const auto le = Regularization::local_energy(4, 0.2);
  const double eps2 = 0.04;
  CHECK(le.big_f(eps2) == doctest::Approx(eps2 * std::log(eps2) - eps2).epsilon(1e-14));
  CHECK_THROWS_AS(le.big_f(-0.1), std::invalid_argument);
}

TEST_CASE("taylor_remainder: endpoint, identity against the polynomial") {
  CHECK(taylor_remainder(2, 0.1, 0.1 * 0.1) == 0.0); // rho exactly at eps^2
  // Both sides of the Taylor identity evaluated independently.
  for (int n : {2, 3, 5}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const double eps = 0.1, rho = frac * eps * eps;
      const double lhs = taylor_remainder(n, eps, rho);
      const double rhs = (std::log(rho) - 1.0) - q_poly(n, eps, rho);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
      CHECK(std::abs(std::abs(lhs) - std::abs(rhs)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(taylor_remainder(2, 0.1, 0.02), std::invalid_argument);
}

TEST_CASE("C^n matching at rho = eps^2, breaking at order n+1") {
  for (int n : {2, 4, 8}) {
    for (double eps : {0.1, 0.01}) {
      const double eps2 = eps * eps;
      for (int k = 0; k <= n; ++k) {
        const double a = exact_branch_derivative(k, eps2);
        const double b = poly_branch_derivative(k, n, eps2);
        CHECK(rel_diff(a, b) < 1e-9);
      }
      const double a = exact_branch_derivative(n + 1, eps2);
      const double b = poly_branch_derivative(n + 1, n, eps2);
      CHECK(rel_diff(a, b) > 1e-3); // the (n+1)-th derivatives differ by a factor n+1
    }
  }
}

TEST_CASE("convexity is preserved: f' >= 0 near the origin") {
  for (int n : {2, 3, 8}) {
    for (double eps : {0.1, 0.01}) {
      const auto reg = Regularization::local_energy(n, eps);
      for (int i = 0; i <= 400; ++i) {
        const double rho = 4.0 * eps * eps * i / 400.0;
        CHECK(reg.f_prime(rho) >= 0.0);
      }
    }
  }
}

// Reduced-sample version of the stability-bound suite; the acceptance
// binary runs the full 10^5-sample version.
TEST_CASE("stability bounds of f_n on random samples (smoke)") {
  for (int n : {2, 8}) {
    for (double eps : {1e-1, 1e-3}) {
      const auto reg = Regularization::local_energy(n, eps);
      std::mt19937_64 rng(1234 + n + static_cast<int>(1 / eps));
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      auto draw_mag = [&]() {
        const double mode = u01(rng);
        if (mode < 0.4) return std::exp(std::log(1e-7) + u01(rng) * std::log(1e8));
        if (mode < 0.7) return 2.0 * eps * u01(rng);
        return 10.0 * u01(rng);
      };
      int violations = 0;
      for (int trial = 0; trial < 2000; ++trial) {
        const std::complex<double> z1 = std::polar(draw_mag(), 2 * M_PI * u01(rng));
        const std::complex<double> z2 = std::polar(draw_mag(), 2 * M_PI * u01(rng));
        const double f1 = reg.f_value(std::norm(z1));
        const double f2 = reg.f_value(std::norm(z2));
        const double dz = std::abs(z1 - z2);
        const double lhs_a = std::abs(f1 - f2);
        const double rhs_a = 4.0 * n * dz / std::max(eps, std::min(std::abs(z1), std::abs(z2)));
        if (lhs_a > rhs_a * (1 + 1e-12) + 1e-11) ++violations;
        const double lhs_b = std::abs(std::imag((z1 * f1 - z2 * f2) * std::conj(z1 - z2)));
        if (lhs_b > 4.0 * n * dz * dz * (1 + 1e-12) + 1e-11) ++violations;
        const double rho = std::norm(z1);
        if (std::abs(rho * reg.f_prime(rho)) > 3.0 * (1 + 1e-12)) ++violations;
        if (std::abs(std::sqrt(rho) * reg.f_prime(rho)) > 2.0 * n / eps * (1 + 1e-12)) ++violations;
        if (std::abs(std::pow(rho, 1.5) * reg.f_second(rho)) > 1.5 * n * n / eps * (1 + 1e-12))
          ++violations;
      }
      CHECK(violations == 0);
    }
  }
}

TEST_CASE("local regularization approaches the exact density as n grows") {
  const double eps = 0.1, eps2 = eps * eps;
  const auto exact = Regularization::exact_log();
  const std::vector<int> orders = {2, 4, 8, 16};
  for (int i = 1; i <= 100; ++i) {
    const double rho = eps2 * i / 101.0;
    double prev = -1.0;
    for (int n : orders) {
      const double diff = std::abs(Regularization::local_energy(n, eps).big_f(rho) - exact.big_f(rho));
      if (prev >= 0.0) CHECK(diff <= prev * (1 + 1e-12) + 1e-300);
      prev = diff;
    }
    // Finite where the exact log diverges in f.
    CHECK(std::isfinite(Regularization::local_energy(4, eps).f_value(rho)));
  }
}
