#include "fbj/backward_basis.hpp"

#include <cmath>
#include <string>

#include "fbj/errors.hpp"
#include "fbj/special_functions.hpp"

namespace fbj {

BackwardSpec::BackwardSpec(JacobiParams params, double rho)
    : params_(params), rho_(rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw DomainError("BackwardSpec: rho must lie in (0, 1], got " +
                      std::to_string(rho));
  }
}

double map_forward(const BackwardSpec& spec, double t) {
  return z_from_gap(spec.rho(), 1.0 - t);
}

double map_inverse(const BackwardSpec& spec, double z) {
  return 1.0 - gap_from_z(spec.rho(), z);
}

double gap_from_z(double rho, double z) {
  if (z >= 1.0) return 0.0;
  return std::exp(std::log1p(-z) / rho);
}

double z_from_gap(double rho, double s) {
  if (s <= 0.0) return 1.0;
  return -std::expm1(rho * std::log(s));
}

double shifted_jacobi(const JacobiParams& params, int r, double z) {
  return jacobi_eval(params, r, 2.0 * z - 1.0);
}

double fb_eval(const BackwardSpec& spec, int r, double t) {
  return shifted_jacobi(spec.params(), r, map_forward(spec, t));
}

double fb_weight(const BackwardSpec& spec, double t) {
  const double rho = spec.rho();
  const double s = 1.0 - t;
  return rho * std::pow(s, rho * (spec.mu() + 1.0) - 1.0) *
         std::pow(z_from_gap(rho, s), spec.upsilon());
}

double fb_weight_tilde(const BackwardSpec& spec, double t) {
  const double rho = spec.rho();
  const double s = 1.0 - t;
  return std::pow(s, rho * spec.mu() + 1.0) *
         std::pow(z_from_gap(rho, s), spec.upsilon() + 1.0) / rho;
}

double derivative_constant(const JacobiParams& params, int r, int k) {
  if (k < 0 || k > r) throw DomainError("derivative_constant: need 0 <= k <= r");
  double d = 1.0;
  for (int j = 0; j < k; ++j) {
    d *= (r - j) + (params.mu() + j) + (params.upsilon() + j) + 1.0;
  }
  return d;
}

double derivative_constant_gamma(const JacobiParams& params, int r, int k) {
  if (k < 0 || k > r) {
    throw DomainError("derivative_constant_gamma: need 0 <= k <= r");
  }
  const double base = r + params.mu() + params.upsilon() + 1.0;
  return gamma_ratio(base + k, base);
}

double fb_deriv_eval(const BackwardSpec& spec, int r, int k, double t) {
  if (k < 1 || k > r) throw DomainError("fb_deriv_eval: need 1 <= k <= r");
  return derivative_constant(spec.params(), r, k) *
         fb_eval(spec.shifted(k), r - k, t);
}

std::vector<double> fb_nodes_z(const BackwardSpec& spec, int N) {
  if (N < 0) throw DomainError("fb_nodes: N must be nonnegative");
  return gauss_rule(spec.params(), N + 1).nodes;
}

std::vector<double> fb_nodes(const BackwardSpec& spec, int N) {
  std::vector<double> nodes = fb_nodes_z(spec, N);
  for (double& z : nodes) z = map_inverse(spec, z);
  return nodes;
}

}  // namespace fbj
