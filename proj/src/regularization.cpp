#include "logsplit/regularization.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace logsplit {

std::string to_string(RegKind kind) {
  switch (kind) {
    case RegKind::ExactLog: return "exact_log";
    case RegKind::LocalEnergy: return "local_energy";
    case RegKind::SqrtShift: return "sqrt_shift";
    case RegKind::SquareShift: return "square_shift";
  }
  throw std::logic_error("unreachable");
}

RegKind reg_kind_from_string(const std::string& name) {
  if (name == "exact_log") return RegKind::ExactLog;
  if (name == "local_energy") return RegKind::LocalEnergy;
  if (name == "sqrt_shift") return RegKind::SqrtShift;
  if (name == "square_shift") return RegKind::SquareShift;
  throw std::invalid_argument("unknown regularization kind: " + name);
}

Regularization::Regularization(RegKind kind, int order, double epsilon)
    : kind_(kind), order_(order), epsilon_(epsilon) {
  if (kind_ != RegKind::ExactLog) {
    if (!(epsilon_ > 0.0 && epsilon_ <= 1.0))
      throw std::invalid_argument("reg.eps: epsilon must be in (0, 1]");
  }
  if (kind_ == RegKind::LocalEnergy && order_ < 2)
    throw std::invalid_argument("reg.n: n must be >= 2");
}

Regularization Regularization::exact_log() { return Regularization(RegKind::ExactLog, 0, 1.0); }
Regularization Regularization::local_energy(int order, double epsilon) {
  return Regularization(RegKind::LocalEnergy, order, epsilon);
}
Regularization Regularization::sqrt_shift(double epsilon) {
  return Regularization(RegKind::SqrtShift, 0, epsilon);
}
Regularization Regularization::square_shift(double epsilon) {
  return Regularization(RegKind::SquareShift, 0, epsilon);
}

namespace {

void require_nonnegative(double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("rho must be >= 0");
}

// sum_{k=1}^{n} s^k / k by Horner.
double harmonic_power_sum(int n, double s) {
  double acc = 0.0;
  for (int k = n; k >= 1; --k) acc = s * (1.0 / k + acc);
  return acc;
}

// sum_{k=0}^{m} s^k by Horner (m < 0 gives 0).
double geometric_sum(int m, double s) {
  double acc = 0.0;
  for (int k = m; k >= 0; --k) acc = 1.0 + s * acc;
  return acc;
}

// sum_{k=0}^{m} (k+1) s^k by Horner (m < 0 gives 0).
double weighted_geometric_sum(int m, double s) {
  double acc = 0.0;
  for (int k = m; k >= 0; --k) acc = (k + 1.0) + s * acc;
  return acc;
}

} // namespace

double q_poly(int n, double eps, double rho) {
  if (n < 2) throw std::invalid_argument("q_poly: n must be >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("q_poly: eps must be in (0, 1]");
  const double eps2 = eps * eps;
  if (!(rho >= 0.0 && rho <= eps2)) throw std::invalid_argument("q_poly: rho must be in [0, eps^2]");
  const double s = 1.0 - rho / eps2;
  return std::log(eps2) - 1.0 - harmonic_power_sum(n, s);
}

double q_poly_prime(int n, double eps, double rho) {
  if (n < 2) throw std::invalid_argument("q_poly_prime: n must be >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("q_poly_prime: eps must be in (0, 1]");
  const double eps2 = eps * eps;
  if (!(rho >= 0.0 && rho <= eps2)) throw std::invalid_argument("q_poly_prime: rho must be in [0, eps^2]");
  // (1/eps^2) sum_{k=0}^{n-1} s^k; the equivalent (1 - s^n)/rho cancels badly
  // near rho = 0.
  const double s = 1.0 - rho / eps2;
  return geometric_sum(n - 1, s) / eps2;
}

double Regularization::f_value(double rho) const {
  require_nonnegative(rho);
  const double eps2 = epsilon_ * epsilon_;
  switch (kind_) {
    case RegKind::ExactLog:
      if (rho == 0.0) throw std::domain_error("exact_log: f diverges at rho = 0");
      return std::log(rho);
    case RegKind::LocalEnergy: {
      if (rho >= eps2) return std::log(rho);
      const double s = 1.0 - rho / eps2;
      const double sn = std::pow(s, order_);
      return std::log(eps2) - (order_ + 1.0) / order_ * sn - harmonic_power_sum(order_ - 1, s);
    }
    case RegKind::SqrtShift:
      return 2.0 * std::log(epsilon_ + std::sqrt(rho));
    case RegKind::SquareShift:
      return std::log(eps2 + rho);
  }
  throw std::logic_error("unreachable");
}

double Regularization::f_prime(double rho) const {
  require_nonnegative(rho);
  const double eps2 = epsilon_ * epsilon_;
  switch (kind_) {
    case RegKind::ExactLog:
      if (rho == 0.0) throw std::domain_error("exact_log: f' diverges at rho = 0");
      return 1.0 / rho;
    case RegKind::LocalEnergy: {
      if (rho >= eps2) return 1.0 / rho;
      const double s = 1.0 - rho / eps2;
      return (order_ * std::pow(s, order_ - 1) + geometric_sum(order_ - 1, s)) / eps2;
    }
    case RegKind::SqrtShift: {
      if (rho == 0.0) throw std::domain_error("sqrt_shift: f' diverges at rho = 0");
      const double r = std::sqrt(rho);
      return 1.0 / (r * (epsilon_ + r));
    }
    case RegKind::SquareShift:
      return 1.0 / (eps2 + rho);
  }
  throw std::logic_error("unreachable");
}

double Regularization::f_second(double rho) const {
  require_nonnegative(rho);
  const double eps2 = epsilon_ * epsilon_;
  switch (kind_) {
    case RegKind::ExactLog:
      if (rho == 0.0) throw std::domain_error("exact_log: f'' diverges at rho = 0");
      return -1.0 / (rho * rho);
    case RegKind::LocalEnergy: {
      if (rho >= eps2) return -1.0 / (rho * rho);
      const double s = 1.0 - rho / eps2;
      const double n = order_;
      // (n^2-1) s^(n-2) + sum_{k=0}^{n-3} (k+1) s^k, all over eps^4; the sum
      // is empty for n < 3.
      return -((n * n - 1.0) * std::pow(s, order_ - 2) + weighted_geometric_sum(order_ - 3, s)) /
             (eps2 * eps2);
    }
    case RegKind::SqrtShift: {
      if (rho == 0.0) throw std::domain_error("sqrt_shift: f'' diverges at rho = 0");
      const double r = std::sqrt(rho);
      const double d = epsilon_ + r;
      return -(epsilon_ + 2.0 * r) / (2.0 * rho * r * d * d);
    }
    case RegKind::SquareShift: {
      const double d = eps2 + rho;
      return -1.0 / (d * d);
    }
  }
  throw std::logic_error("unreachable");
}

double Regularization::big_f(double rho) const {
  require_nonnegative(rho);
  const double eps2 = epsilon_ * epsilon_;
  switch (kind_) {
    case RegKind::ExactLog:
      return rho == 0.0 ? 0.0 : rho * std::log(rho) - rho;
    case RegKind::LocalEnergy:
      if (rho >= eps2) return rho * std::log(rho) - rho;
      return rho * (std::log(eps2) - 1.0 - harmonic_power_sum(order_, 1.0 - rho / eps2));
    case RegKind::SqrtShift: {
      const double r = std::sqrt(rho);
      return 2.0 * rho * std::log(epsilon_ + r) + 2.0 * epsilon_ * r - rho -
             2.0 * eps2 * std::log1p(r / epsilon_);
    }
    case RegKind::SquareShift:
      return (eps2 + rho) * std::log(eps2 + rho) - rho - 2.0 * eps2 * std::log(epsilon_);
  }
  throw std::logic_error("unreachable");
}

namespace {

// Adaptive Simpson on [a, b] with absolute tolerance.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double taylor_remainder(int n, double eps, double rho) {
  if (n < 2) throw std::invalid_argument("taylor_remainder: n must be >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("taylor_remainder: eps must be in (0, 1]");
  const double eps2 = eps * eps;
  if (!(rho >= 0.0 && rho <= eps2))
    throw std::invalid_argument("taylor_remainder: rho must be in [0, eps^2]");
  if (rho == 0.0) return -std::numeric_limits<double>::infinity(); // integrand ~ 1/s
  if (rho == eps2) return 0.0;
  const auto integrand = [n, rho](double s) { return std::pow(s - rho, n) / std::pow(s, n + 1); };
  // Oriented integral from eps^2 down to rho.
  return -integrate(integrand, rho, eps2, 1e-14);
}

} // namespace logsplit
