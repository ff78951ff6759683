#include "fbj/jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "fbj/errors.hpp"
#include "fbj/special_functions.hpp"

namespace fbj {

JacobiParams::JacobiParams(double mu, double upsilon)
    : mu_(mu), upsilon_(upsilon) {
  if (!(mu > -1.0) || !(upsilon > -1.0)) {
    throw DomainError("JacobiParams: exponents must exceed -1 (mu=" +
                      std::to_string(mu) +
                      ", upsilon=" + std::to_string(upsilon) + ")");
  }
}

RecurrenceCoefficients jacobi_recurrence(const JacobiParams& params, int n) {
  const double al = params.mu();
  const double be = params.upsilon();
  const double ab = al + be;
  if (n == 0) return {0.5 * (ab + 2.0), 0.5 * (al - be), 0.0};
  const double s = 2.0 * n + ab;  // 2n + alpha + beta
  const double denom = 2.0 * (n + 1.0) * (n + 1.0 + ab) * s;
  return {(s + 1.0) * (s + 2.0) * s / denom,
          (s + 1.0) * (al * al - be * be) / denom,
          2.0 * (n + al) * (n + be) * (s + 2.0) / denom};
}

double jacobi_eval(const JacobiParams& params, int r, double x) {
  if (r < 0) throw DomainError("jacobi_eval: degree must be nonnegative");
  double prev = 0.0;
  double cur = 1.0;
  for (int n = 0; n < r; ++n) {
    const auto [a, b, c] = jacobi_recurrence(params, n);
    const double next = (a * x + b) * cur - c * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

JacobiValue jacobi_eval_with_derivative(const JacobiParams& params, int r,
                                        double x) {
  if (r == 0) return {1.0, 0.0};
  const double factor = 0.5 * (r + params.mu() + params.upsilon() + 1.0);
  return {jacobi_eval(params, r, x),
          factor * jacobi_eval(params.shifted(1), r - 1, x)};
}

double jacobi_clenshaw(const JacobiParams& params,
                       std::span<const double> coeffs, double x) {
  // b_k = c_k + (a_k x + b_k) b_{k+1} - c_{k+1} b_{k+2}; the sum is b_0.
  double b1 = 0.0;
  double b2 = 0.0;
  const int n = static_cast<int>(coeffs.size());
  for (int k = n - 1; k >= 0; --k) {
    const auto rk = jacobi_recurrence(params, k);
    const double c_next = jacobi_recurrence(params, k + 1).c;
    const double bk = coeffs[k] + (rk.a * x + rk.b) * b1 - c_next * b2;
    b2 = b1;
    b1 = bk;
  }
  return b1;
}

double weight_mass(const JacobiParams& params) {
  return beta(params.mu() + 1.0, params.upsilon() + 1.0);
}

double jacobi_norm(const JacobiParams& params, int r) {
  if (r < 0) throw DomainError("jacobi_norm: degree must be nonnegative");
  if (r == 0) return weight_mass(params);
  const double mu = params.mu();
  const double up = params.upsilon();
  const double log_value = log_gamma(r + mu + 1.0) + log_gamma(r + up + 1.0) -
                           log_gamma(r + 1.0) - log_gamma(r + mu + up + 1.0);
  return std::exp(log_value) / (2.0 * r + mu + up + 1.0);
}

namespace {

// Eigenvalues of the symmetric tridiagonal Jacobi matrix for the shifted
// weight, ascending.
std::vector<double> jacobi_matrix_eigenvalues(const JacobiParams& params,
                                              int M) {
  const double al = params.mu();
  const double be = params.upsilon();
  const double ab = al + be;
  Eigen::VectorXd diag(M);
  Eigen::VectorXd sub(std::max(M - 1, 0));
  for (int n = 0; n < M; ++n) {
    double a;
    if (n == 0) {
      a = (be - al) / (ab + 2.0);
    } else {
      const double s = 2.0 * n + ab;
      a = (be * be - al * al) / (s * (s + 2.0));
    }
    diag(n) = 0.5 * (a + 1.0);
  }
  for (int n = 1; n < M; ++n) {
    double b2;
    if (n == 1) {
      b2 = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * n + ab;
      b2 = 4.0 * n * (n + al) * (n + be) * (n + ab) /
           (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(n - 1) = 0.5 * std::sqrt(b2);
  }
  if (M == 1) return {diag(0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("gauss_rule: tridiagonal eigensolver failed");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// P_M and d/dx P_M at x = 2z - 1, carried in extended precision so the
// quadrature weights are accurate to the last bit of a double.
struct ExtendedValue {
  long double value;
  long double derivative;
};

long double jacobi_eval_extended(long double al, long double be, int r,
                                 long double x) {
  const long double ab = al + be;
  long double prev = 0.0L;
  long double cur = 1.0L;
  for (int n = 0; n < r; ++n) {
    long double a, b, c;
    if (n == 0) {
      a = 0.5L * (ab + 2.0L);
      b = 0.5L * (al - be);
      c = 0.0L;
    } else {
      const long double s = 2.0L * n + ab;
      const long double denom = 2.0L * (n + 1.0L) * (n + 1.0L + ab) * s;
      a = (s + 1.0L) * (s + 2.0L) * s / denom;
      b = (s + 1.0L) * (al * al - be * be) / denom;
      c = 2.0L * (n + al) * (n + be) * (s + 2.0L) / denom;
    }
    const long double next = (a * x + b) * cur - c * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ExtendedValue jacobi_pair_extended(long double al, long double be, int r,
                                   long double z) {
  const long double x = 2.0L * z - 1.0L;
  return {jacobi_eval_extended(al, be, r, x),
          0.5L * (r + al + be + 1.0L) *
              jacobi_eval_extended(al + 1.0L, be + 1.0L, r - 1, x)};
}

}  // namespace

QuadratureRule gauss_rule(const JacobiParams& params, int M) {
  if (M < 1) throw DomainError("gauss_rule: need at least one node");
  constexpr long double kRelTolerance = 4e-17L;
  constexpr long double kStallTolerance = 1e-14L;
  constexpr int kMaxIterations = 100;

  std::vector<double> nodes = jacobi_matrix_eigenvalues(params, M);
  std::vector<double> weights(M);
  const long double mu = params.mu();
  const long double up = params.upsilon();
  const long double log_const = std::lgamma(M + mu + 1.0L) +
                                std::lgamma(M + up + 1.0L) -
                                std::lgamma(M + mu + up + 1.0L) -
                                std::lgamma(M + 1.0L);

  for (int i = 0; i < M; ++i) {
    long double z = std::clamp<long double>(nodes[i], 1e-300L, 1.0L - 1e-16L);
    ExtendedValue pv{};
    int settled = 0;
    long double prev_step = HUGE_VALL;
    for (int it = 0; it < kMaxIterations && settled < 2; ++it) {
      pv = jacobi_pair_extended(mu, up, M, z);
      const long double step = std::abs(0.5L * pv.value / pv.derivative);
      z -= 0.5L * pv.value / pv.derivative;
      // One extra sweep after the step drops below tolerance, or once the
      // step stalls at the rounding floor of the recurrence.
      const long double scale = std::min(z, 1.0L - z);
      const bool small = step <= kRelTolerance * scale;
      const bool stalled = step <= kStallTolerance * scale && step >= 0.5L * prev_step;
      if (small || stalled) ++settled;
      prev_step = step;
    }
    if (settled == 0 || !(z > 0.0L && z < 1.0L)) {
      throw ConvergenceError("gauss_rule: Newton polish failed at node " +
                             std::to_string(i) + " of " + std::to_string(M));
    }
    pv = jacobi_pair_extended(mu, up, M, z);
    nodes[i] = static_cast<double>(z);
    weights[i] = static_cast<double>(
        std::exp(log_const - std::log(4.0L * z * (1.0L - z)) -
                 2.0L * std::log(std::abs(pv.derivative))));
  }
  for (int i = 1; i < M; ++i) {
    if (!(nodes[i] > nodes[i - 1])) {
      throw ConvergenceError("gauss_rule: nodes not strictly increasing");
    }
  }
  return {params, std::move(nodes), std::move(weights)};
}

}  // namespace fbj
