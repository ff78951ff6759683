#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fbj/approximation.hpp"
#include "fbj/backward_basis.hpp"
#include "fbj/jacobi.hpp"

namespace fbj {

/// Smooth factor K(t, varrho) of the kernel (varrho - t)^{-theta} K(t, varrho)
/// on the triangle 0 <= t <= varrho <= 1.
using Kernel = std::function<double(double t, double varrho)>;

/// u(t) = g(t) + int_t^1 (varrho - t)^{-theta} K(t, varrho) u(varrho) dvarrho.
struct ProblemDefinition {
  std::string label;
  double theta = 0.5;
  Kernel kernel;
  GapFunction source;
  std::optional<GapFunction> exact;
};

/// Throws DomainError unless 0 < theta < 1 and the kernel is finite on an
/// 11 x 11 sample of the closed triangle.
void validate_problem(const ProblemDefinition& problem);

/// ((1 - (1 - eta)^{1/rho}) / eta)^{-theta}. Below eta = 1e-6 a three-term
/// Taylor expansion of the inner ratio replaces direct evaluation.
double singular_factor(double rho, double theta, double eta);

/// Direct (non-series) evaluation of singular_factor, exposed for tests.
double singular_factor_direct(double rho, double theta, double eta);

/// Transformed kernel (1-t_i)^{1-theta}/rho * singular_factor * K(t_i, varrho_i(eta)),
/// varrho_i(eta) = t_i + (1 - t_i)(1 - (1 - eta)^{1/rho}). Requires t_i < 1.
double kernel_transform(const ProblemDefinition& problem,
                        const BackwardSpec& spec, double t_i, double eta);

struct AssembledSystem {
  Eigen::MatrixXd matrix;  // I - A
  Eigen::VectorXd rhs;     // g(t_i)
};

/// Nodes, quadrature rule and cardinal-function data for one (problem, spec,
/// N). Immutable once built; row assembly only reads shared state.
class CollocationSystem {
 public:
  /// quad_points = 0 uses the N + 1 point rule of the analyzed scheme.
  CollocationSystem(ProblemDefinition problem, BackwardSpec spec, int N,
                    int quad_points = 0);

  const ProblemDefinition& problem() const noexcept { return problem_; }
  const BackwardSpec& spec() const noexcept { return spec_; }
  int degree() const noexcept { return N_; }
  const std::vector<double>& nodes_z() const noexcept { return nodes_z_; }
  const std::vector<double>& nodes_gap() const noexcept { return nodes_gap_; }
  std::vector<double> nodes_t() const;
  const QuadratureRule& rule() const noexcept { return rule_; }

  /// Quadrature approximation of (K_R phi)(t_i).
  double discrete_operator(const GapFunction& phi, int i) const;

  /// Same with phi given by nodal values on the collocation nodes.
  double discrete_operator(const Interpolant& phi, int i) const;

  AssembledSystem assemble() const;

 private:
  /// Transformed kernel at node i and quadrature point k.
  double kernel_at(int i, int k) const;

  ProblemDefinition problem_;
  BackwardSpec spec_;
  int N_;
  std::vector<double> nodes_z_;
  std::vector<double> nodes_gap_;
  QuadratureRule rule_;
  std::vector<double> eta_gap_;  // (1 - eta_k)^{1/rho}
  Interpolant cardinal_;         // values unused; holds barycentric data
};

/// (K_{R,N} phi)(t_i) with the N + 1 point rule.
double discrete_operator(const ProblemDefinition& problem,
                         const BackwardSpec& spec, int N, const GapFunction& phi,
                         int i);

AssembledSystem assemble(const ProblemDefinition& problem,
                         const BackwardSpec& spec, int N);

struct SolveOptions {
  int quad_points = 0;  // 0: N + 1
};

struct SolveDiagnostics {
  double condition_estimate = 0.0;
  double assembly_ms = 0.0;
  double solve_ms = 0.0;
  double residual = 0.0;  // max |M u - rhs|
  std::vector<std::string> warnings;
};

struct CollocationSolution {
  BackwardSpec spec;
  std::vector<double> nodes_t;
  std::vector<double> nodes_gap;
  std::vector<double> values;
  Interpolant interpolant;
  SolveDiagnostics diagnostics;

  double eval(double t) const { return interpolant.eval(t); }
  double eval_gap(double s) const { return interpolant.eval_gap(s); }
};

/// Condition estimates above this are reported as a warning.
inline constexpr double kIllConditioned = 1e12;

/// Assembles and solves the collocation system by LU with partial pivoting.
/// Throws SingularMatrixError on a zero pivot.
CollocationSolution solve(const ProblemDefinition& problem,
                          const BackwardSpec& spec, int N,
                          const SolveOptions& options = {});

}  // namespace fbj
