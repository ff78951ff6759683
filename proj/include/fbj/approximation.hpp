#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fbj/backward_basis.hpp"

namespace fbj {

/// A real function on [0, 1] written in terms of the terminal distance
/// s = 1 - t. Every user function handed to the approximation and solver
/// layers uses this convention.
using GapFunction = std::function<double(double s)>;

/// Adapts an ordinary function of t.
GapFunction from_t(std::function<double(double t)> f);

/// Coefficients of a finite expansion in P_r^{mu,upsilon,rho}.
struct Expansion {
  BackwardSpec spec;
  std::vector<double> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// Evaluates the expansion at t by Clenshaw recurrence in z.
double eval_expansion(const Expansion& e, double t);
/// Same, at the point with terminal distance s.
double eval_expansion_gap(const Expansion& e, double s);

/// Barycentric Lagrange interpolant through the mapped Gauss nodes.
/// Immutable after construction; evaluation is thread-safe.
class Interpolant {
 public:
  Interpolant(BackwardSpec spec, std::vector<double> nodes_z,
              std::vector<double> values);

  const BackwardSpec& spec() const noexcept { return spec_; }
  const std::vector<double>& nodes_z() const noexcept { return nodes_z_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& bary_weights() const noexcept { return bary_; }
  int degree() const noexcept { return static_cast<int>(nodes_z_.size()) - 1; }

  double eval_z(double z) const;
  double eval(double t) const;
  double eval_gap(double s) const;

  /// Writes h_j(z) for every j into `out` (size N + 1).
  void cardinals_z(double z, std::span<double> out) const;

  /// sum_j |h_j(z)|.
  double lebesgue_function_z(double z) const;

 private:
  /// Index of the node within 1e-15 of z, or -1.
  int coincident_node(double z) const;

  BackwardSpec spec_;
  std::vector<double> nodes_z_;
  std::vector<double> values_;
  std::vector<double> bary_;
};

/// Barycentric weights 1 / prod_{k != j} (z_j - z_k), scaled to max |w| = 1.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Default projection quadrature size max(2N, N + 32).
int default_quad_size(int N);

/// Weighted L2 projection onto span{P_0..P_N}; quad_size 0 selects the
/// default. Requires quad_size >= N + 1.
Expansion project(const BackwardSpec& spec, int N, const GapFunction& f,
                  int quad_size = 0);

/// Interpolant of f at the N + 1 mapped Gauss nodes.
Interpolant interpolate(const BackwardSpec& spec, int N, const GapFunction& f);

/// ||f - g|| in L2 with weight kappa^{mu,upsilon,rho}, by a quad_size-point
/// Gauss rule in z.
double weighted_l2_error(const BackwardSpec& spec, const GapFunction& f,
                         const GapFunction& g, int quad_size);

/// Default L-infinity grid size.
inline constexpr int kDefaultSamples = 2001;

/// Terminal distances of the L-infinity sampling grid: `samples` points
/// uniform in z on [z(1e-6), 1 - 1e-12], mapped back with the given rho.
/// Ordered by increasing t.
std::vector<double> linf_grid_gaps(double rho, int samples);

/// max |f - g| over linf_grid_gaps(spec.rho(), samples).
double linf_error(const BackwardSpec& spec, const GapFunction& f,
                  const GapFunction& g, int samples = kDefaultSamples);

/// max over `samples` z-uniform points on [0, 1] of sum_j |h_j|.
double lebesgue_constant(const BackwardSpec& spec, int N, int samples);

}  // namespace fbj
