#pragma once

#include <vector>

#include "fbj/jacobi.hpp"

namespace fbj {

/// One fractional backward Jacobi family: Jacobi exponents plus the mapping
/// exponent rho of z = 1 - (1 - t)^rho.
class BackwardSpec {
 public:
  /// Throws DomainError unless 0 < rho <= 1.
  BackwardSpec(JacobiParams params, double rho);
  BackwardSpec(double mu, double upsilon, double rho)
      : BackwardSpec(JacobiParams(mu, upsilon), rho) {}

  const JacobiParams& params() const noexcept { return params_; }
  double mu() const noexcept { return params_.mu(); }
  double upsilon() const noexcept { return params_.upsilon(); }
  double rho() const noexcept { return rho_; }

  /// Same rho, parameters (mu + k, upsilon + k).
  BackwardSpec shifted(int k) const { return {params_.shifted(k), rho_}; }

 private:
  JacobiParams params_;
  double rho_;
};

// Coordinates. t is the physical variable on [0, 1], s = 1 - t its distance
// to the terminal point and z = 1 - s^rho the mapped variable. Working with s
// keeps full relative precision next to t = 1, where small rho squeezes the
// collocation nodes to within 1e-20 of the endpoint.

/// z = 1 - (1 - t)^rho.
double map_forward(const BackwardSpec& spec, double t);

/// t = 1 - (1 - z)^(1/rho); underflow of (1 - z)^(1/rho) yields t = 1.
double map_inverse(const BackwardSpec& spec, double z);

/// s = (1 - z)^(1/rho), computed as exp(log1p(-z) / rho).
double gap_from_z(double rho, double z);

/// z = 1 - s^rho.
double z_from_gap(double rho, double s);

/// Shifted Jacobi polynomial P_r^{mu,upsilon}(2z - 1).
double shifted_jacobi(const JacobiParams& params, int r, double z);

/// P_r^{mu,upsilon,rho}(t) = P_r^{mu,upsilon}(1 - 2(1 - t)^rho).
double fb_eval(const BackwardSpec& spec, int r, double t);

/// Orthogonality weight rho (1-t)^{rho(mu+1)-1} (1-(1-t)^rho)^upsilon.
double fb_weight(const BackwardSpec& spec, double t);

/// Derivative-side weight rho^{-1} (1-t)^{rho mu + 1} (1-(1-t)^rho)^{upsilon+1}.
double fb_weight_tilde(const BackwardSpec& spec, double t);

/// Constant of D_rho^k P_r = d_{r,k} P_{r-k}^{mu+k,upsilon+k,rho}, formed as
/// the product of the one-step factors (r-j) + (mu+j) + (upsilon+j) + 1.
double derivative_constant(const JacobiParams& params, int r, int k);

/// The same constant as Gamma(r+k+mu+upsilon+1) / Gamma(r+mu+upsilon+1).
double derivative_constant_gamma(const JacobiParams& params, int r, int k);

/// k-th transformed derivative D_rho^k P_r^{mu,upsilon,rho}(t), where
/// D_rho = d/dz. Requires 1 <= k <= r.
double fb_deriv_eval(const BackwardSpec& spec, int r, int k, double t);

/// Collocation nodes: the N + 1 zeros of P_{N+1}^{mu,upsilon,rho}, ascending.
std::vector<double> fb_nodes(const BackwardSpec& spec, int N);

/// The same nodes in the mapped variable z (shifted Gauss-Jacobi nodes).
std::vector<double> fb_nodes_z(const BackwardSpec& spec, int N);

}  // namespace fbj
