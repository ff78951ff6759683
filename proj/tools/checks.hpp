#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbj/backward_basis.hpp"
#include "fbj/problems.hpp"

// Numerical invariant checks shared by `fbj selftest` and the acceptance
// harness. Each returns the measured quantity; thresholds live with callers.
namespace fbj::checks {

struct GramResult {
  double max_offdiag = 0.0;
  double max_diag_rel = 0.0;  // against the Gamma closed form of the norms
};

/// Gram matrix of P_0..P_N of `spec` under gauss_rule(params, N + 2), the
/// change of variables to z; the basis is evaluated at z(s(z_k)).
GramResult gram(const BackwardSpec& spec, int N);

/// Largest relative error of gauss_rule(params, M) on z^k, k <= 2M - 1,
/// over M = 1..max_points, against the Beta closed form.
double quadrature_exactness(const JacobiParams& params, int max_points);

/// Largest |fb_deriv_eval(r, 1) - central difference in z| / max(1, |value|)
/// over r = 1..max_degree at `points` random interior t.
double derivative_fd_error(const BackwardSpec& spec, int max_degree,
                           int points, std::uint64_t seed);

/// Largest |L P_r - sigma_r P_r| / (sigma_r max(1, |P_r|)) over r =
/// 1..max_degree at `points` interior points, L the z-space Sturm-Liouville
/// operator built from the first and second transformed derivatives.
double sturm_liouville_residual(const BackwardSpec& spec, int max_degree,
                                int points);

/// Largest ||d_t phi||_{kappa~} / (sqrt(N(N+mu+upsilon+1)) ||phi||_kappa)
/// over `samples` random phi of degree N; norms by 4N-point rules in z.
double inverse_inequality_ratio(const BackwardSpec& spec, int N, int samples,
                                std::uint64_t seed);

/// Nodal error of the solver (rho = 1, K = 1) on a random manufactured
/// polynomial of degree N.
double polynomial_recovery_error(double theta, int N, std::uint64_t seed);

/// Largest |oracle(cfg) - oracle(cfg.refined())| over the source probes for
/// the exact solution of `problem` as integrand.
double oracle_doubling_change(const ProblemDefinition& problem,
                              const OracleConfig& cfg = {});

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit y = slope * x + intercept.
LogFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// lebesgue_constant at each N, then the fit Lambda_N = c log N + b.
LogFit lebesgue_log_fit(const BackwardSpec& spec, const std::vector<int>& Ns,
                        int samples);

/// One row of a check table.
struct CheckRow {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

/// The invariant suite run by `fbj selftest`. `quick` drops N = 64 from the
/// Lebesgue sweep; `seed` drives every random test function.
std::vector<CheckRow> run_selftest(bool quick, std::uint64_t seed);

/// Formats rows as an aligned plain-text table.
std::string format_table(const std::vector<CheckRow>& rows);

}  // namespace fbj::checks
