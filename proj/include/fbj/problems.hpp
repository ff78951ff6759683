#pragma once

#include <vector>

#include "fbj/volterra.hpp"

namespace fbj {

/// Composite Gauss-Legendre reference quadrature for (K_R u)(t). The
/// integration variable is graded geometrically toward both ends.
struct OracleConfig {
  int panels = 60;            // per graded half
  int points_per_panel = 16;
  double grading_ratio = 0.25;

  /// Throws DomainError unless panels >= 4, points_per_panel >= 8 and
  /// 0 < grading_ratio < 1.
  void validate() const;

  /// Twice the panels with the square-rooted ratio: every panel bisected
  /// geometrically.
  OracleConfig refined() const;
};

/// Largest change tolerated between a configuration and its refinement.
inline constexpr double kOracleDoublingTolerance = 1e-9;

/// One evaluation of (K_R u)(t) at the point with terminal distance `gap`,
/// using a single configuration. The substitution
/// varrho = t + (1 - t) sigma^{1/(1-theta)} absorbs the kernel singularity.
double oracle_kr_single(const GapFunction& u, double theta, const Kernel& kernel,
                        double gap, const OracleConfig& cfg);

/// Certified evaluation at terminal distance `gap`: the configuration and its
/// refinement must agree to kOracleDoublingTolerance (else
/// OracleAccuracyError); the refined value is returned.
double oracle_kr_gap(const GapFunction& u, double theta, const Kernel& kernel,
                     double gap, const OracleConfig& cfg = {});

/// Certified evaluation at t in [0, 1).
double oracle_kr(const GapFunction& u, double theta, const Kernel& kernel,
                 double t, const OracleConfig& cfg = {});

/// K(t, varrho) = 1.
Kernel unit_kernel();

/// u(t) = (1-t)^{-theta} sin(1-t), K = 1, with the Bessel-function source.
/// The closed-form source is checked against u - oracle at five probe points
/// and replaced by the oracle route if they disagree by more than 1e-9.
ProblemDefinition example1(double theta);

/// Closed-form source of example1 as a function of s = 1 - t.
GapFunction example1_closed_form_source(double theta);

/// u(t) = (1-t)^{gamma1} + (1-t)^{gamma2}, K = 1, Beta closed-form source.
ProblemDefinition case_i(double theta, double gamma1, double gamma2);

/// u(t) = sin((1-t)^{gamma1} + (1-t)^{gamma2}), K = 1; the source is
/// u - oracle_kr(u), memoized per evaluation point.
ProblemDefinition case_ii(double theta, double gamma1, double gamma2);

/// u(t) = (1-t)^{gamma}, K = 1, Beta closed-form source.
ProblemDefinition single_power(double theta, double gamma);

/// u(t) = sum_k coeffs[k] (1-t)^k, K = 1, Beta closed-form source.
ProblemDefinition manufactured_polynomial(double theta,
                                          std::vector<double> coeffs);

/// Regularity index gamma of case_i / case_ii: +infinity when both
/// exponents are integers, otherwise the smaller non-integer one.
double regularity_index(double gamma1, double gamma2);

/// Probe points used by the source-consistency checks.
inline constexpr double kSourceProbes[] = {0.0, 0.25, 0.5, 0.75, 0.95};

/// max over the probes of |g - (u - oracle_kr(u))|. Requires an exact solution.
double source_consistency_error(const ProblemDefinition& problem,
                                const OracleConfig& cfg = {});

}  // namespace fbj
