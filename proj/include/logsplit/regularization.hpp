#pragma once

#include <string>

// Nonlinearity / energy-density families for the logarithmic Schroedinger
// equation. The energy density is F(rho) = rho*ln(rho) - rho with
// f = F' = ln(rho); each regularization replaces f (equivalently F) by a
// smooth approximation controlled by a parameter 0 < eps <= 1:
//
//   LocalEnergy(n): F is kept exact for rho >= eps^2 and replaced below by
//       P_{n+1}(rho) = rho * Q_n(rho), where Q_n is the degree-n Taylor
//       polynomial of Q(rho) = ln(rho) - 1 at rho = eps^2.  The resulting
//       density is C^n and its derivative f_n is
//       f_n(rho) = ln(eps^2) - (n+1)/n * s^n - sum_{k=1}^{n-1} s^k / k,
//       with s = 1 - rho/eps^2, for rho < eps^2.
//   SqrtShift:   f(rho) = 2*ln(eps + sqrt(rho))
//   SquareShift: f(rho) = ln(eps^2 + rho)
//   ExactLog:    f(rho) = ln(rho)  (eps is ignored)
//
// All s-power sums are evaluated by Horner recurrences in s, which stays
// accurate as rho -> eps^2 (s -> 0). At exactly rho = eps^2 the log branch
// is returned; both branches agree there for derivatives up to order n.

namespace logsplit {

enum class RegKind { ExactLog, LocalEnergy, SqrtShift, SquareShift };

std::string to_string(RegKind kind);
RegKind reg_kind_from_string(const std::string& name);

class Regularization {
public:
  static Regularization exact_log();
  static Regularization local_energy(int order, double epsilon);
  static Regularization sqrt_shift(double epsilon);
  static Regularization square_shift(double epsilon);

  RegKind kind() const { return kind_; }
  int order() const { return order_; }        // meaningful for LocalEnergy only
  double epsilon() const { return epsilon_; } // ignored by ExactLog

  // Regularized nonlinearity f(rho) and its first two derivatives.
  // Domain errors: ExactLog needs rho > 0; SqrtShift's derivatives diverge
  // at rho = 0. Negative rho is always an argument error.
  double f_value(double rho) const;
  double f_prime(double rho) const;
  double f_second(double rho) const;

  // Antiderivative F(rho) with F(0) = 0 (continuous extension for ExactLog).
  double big_f(double rho) const;

  bool operator==(const Regularization&) const = default;

private:
  Regularization(RegKind kind, int order, double epsilon);

  RegKind kind_;
  int order_;
  double epsilon_;
};

// Degree-n Taylor polynomial of Q(rho) = ln(rho) - 1 at rho = eps^2:
// Q_n(rho) = ln(eps^2) - 1 - sum_{k=1}^{n} s^k / k,  s = 1 - rho/eps^2.
// Requires n >= 2, 0 < eps <= 1, 0 <= rho <= eps^2.
double q_poly(int n, double eps, double rho);

// (Q_n)'(rho) = (1/rho) * (1 - s^n); at rho = 0 the limit n/eps^2.
double q_poly_prime(int n, double eps, double rho);

// Taylor remainder Q(rho) - Q_n(rho) = integral_{eps^2}^{rho} (s-rho)^n / s^{n+1} ds,
// evaluated by adaptive quadrature (diagnostic / oracle use only; the
// integral diverges to -inf as rho -> 0).
double taylor_remainder(int n, double eps, double rho);

} // namespace logsplit
