#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fbj {

/// Exponents of the shifted Jacobi weight (1 - z)^mu z^upsilon on [0, 1];
/// equivalently the classical pair (alpha, beta) = (mu, upsilon) on [-1, 1].
class JacobiParams {
 public:
  /// Throws DomainError unless mu > -1 and upsilon > -1.
  JacobiParams(double mu, double upsilon);

  double mu() const noexcept { return mu_; }
  double upsilon() const noexcept { return upsilon_; }

  /// Parameters (mu + k, upsilon + k), the family of the k-th derivative.
  JacobiParams shifted(int k) const { return {mu_ + k, upsilon_ + k}; }

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;

 private:
  double mu_;
  double upsilon_;
};

/// Gauss rule on [0, 1] for the weight (1 - z)^mu z^upsilon.
struct QuadratureRule {
  JacobiParams params;
  std::vector<double> nodes;    // strictly increasing, inside (0, 1)
  std::vector<double> weights;  // positive

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Coefficients of P_{n+1}(x) = (a x + b) P_n(x) - c P_{n-1}(x).
struct RecurrenceCoefficients {
  double a;
  double b;
  double c;
};

RecurrenceCoefficients jacobi_recurrence(const JacobiParams& params, int n);

/// Classical Jacobi polynomial P_r^{mu,upsilon}(x) on [-1, 1].
double jacobi_eval(const JacobiParams& params, int r, double x);

struct JacobiValue {
  double value;
  double derivative;  // d/dx
};

/// P_r and dP_r/dx at x; the derivative uses
/// dP_r^{a,b}/dx = (r + a + b + 1)/2 P_{r-1}^{a+1,b+1}.
JacobiValue jacobi_eval_with_derivative(const JacobiParams& params, int r,
                                        double x);

/// sum_r coeffs[r] P_r^{mu,upsilon}(x) by Clenshaw's backward recurrence.
double jacobi_clenshaw(const JacobiParams& params,
                       std::span<const double> coeffs, double x);

/// Squared norm of the shifted polynomial P_r(2z - 1) under
/// (1 - z)^mu z^upsilon on [0, 1]:
///   Gamma(r+mu+1) Gamma(r+upsilon+1) / (r! (2r+mu+upsilon+1) Gamma(r+mu+upsilon+1)).
/// r = 0 is evaluated as B(mu + 1, upsilon + 1).
double jacobi_norm(const JacobiParams& params, int r);

/// Total mass B(mu + 1, upsilon + 1) of the weight.
double weight_mass(const JacobiParams& params);

/// M-point Gauss-Jacobi rule on [0, 1], exact for polynomials of degree
/// 2M - 1. Nodes come from the eigenvalues of the shifted Jacobi matrix and
/// are polished by Newton's method on the three-term recurrence (update
/// tolerance 1e-14, at most 100 steps). Throws ConvergenceError if the
/// polish stalls and DomainError for M < 1.
QuadratureRule gauss_rule(const JacobiParams& params, int M);

}  // namespace fbj
