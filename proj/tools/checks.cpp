#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "fbj/jacobi.hpp"
#include "fbj/problems.hpp"
#include "fbj/volterra.hpp"

namespace fbj::checks {

namespace {

// Norm constant straight from the Gamma closed form, deliberately not going
// through the library's log_gamma.
double closed_form_norm(double mu, double up, int r) {
  if (r == 0) return std::tgamma(mu + 1) * std::tgamma(up + 1) / std::tgamma(mu + up + 2);
  return std::exp(std::lgamma(r + mu + 1) + std::lgamma(r + up + 1) -
                  std::lgamma(r + 1.0) - std::lgamma(r + mu + up + 1)) /
         (2 * r + mu + up + 1);
}

}  // namespace

GramResult gram(const BackwardSpec& spec, int N) {
  const QuadratureRule rule = gauss_rule(spec.params(), N + 2);
  std::vector<std::vector<double>> vals(N + 1, std::vector<double>(rule.size()));
  for (int r = 0; r <= N; ++r) {
    for (std::size_t k = 0; k < rule.size(); ++k) {
      // Through the terminal distance s = 1 - t rather than t itself, which
      // would round away the digits of 1 - z for small rho.
      const double s = gap_from_z(spec.rho(), rule.nodes[k]);
      vals[r][k] = shifted_jacobi(spec.params(), r, z_from_gap(spec.rho(), s));
    }
  }
  GramResult out;
  for (int r = 0; r <= N; ++r) {
    for (int q = 0; q <= r; ++q) {
      double g = 0.0;
      for (std::size_t k = 0; k < rule.size(); ++k) {
        g += rule.weights[k] * vals[r][k] * vals[q][k];
      }
      if (q != r) {
        out.max_offdiag = std::max(out.max_offdiag, std::abs(g));
      } else {
        const double ref = closed_form_norm(spec.mu(), spec.upsilon(), r);
        out.max_diag_rel = std::max(out.max_diag_rel, std::abs(g - ref) / ref);
      }
    }
  }
  return out;
}

double quadrature_exactness(const JacobiParams& params, int max_points) {
  double worst = 0.0;
  for (int M = 1; M <= max_points; ++M) {
    const QuadratureRule rule = gauss_rule(params, M);
    for (int k = 0; k <= 2 * M - 1; ++k) {
      double q = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        q += rule.weights[i] * std::pow(rule.nodes[i], k);
      }
      const double ref = std::beta(params.upsilon() + k + 1, params.mu() + 1);
      worst = std::max(worst, std::abs(q - ref) / ref);
    }
  }
  return worst;
}

double derivative_fd_error(const BackwardSpec& spec, int max_degree,
                           int points, std::uint64_t seed) {
  constexpr double h = 1e-6;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(0.02, 0.98);
  double worst = 0.0;
  for (int p = 0; p < points; ++p) {
    const double t = dist(gen);
    const double z = map_forward(spec, t);
    for (int r = 1; r <= max_degree; ++r) {
      const double fd = (fb_eval(spec, r, map_inverse(spec, z + h)) -
                         fb_eval(spec, r, map_inverse(spec, z - h))) /
                        (2 * h);
      const double exact = fb_deriv_eval(spec, r, 1, t);
      worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
  }
  return worst;
}

double sturm_liouville_residual(const BackwardSpec& spec, int max_degree,
                                int points) {
  const double mu = spec.mu();
  const double up = spec.upsilon();
  double worst = 0.0;
  for (int r = 1; r <= max_degree; ++r) {
    const double sigma = r * (r + mu + up + 1);
    for (int p = 0; p < points; ++p) {
      const double t = (p + 0.5) / points;
      const double z = map_forward(spec, t);
      const double d1 = fb_deriv_eval(spec, r, 1, t);
      // Second derivative: the k = 1 identity applied to the shifted family.
      const double d2 =
          r >= 2 ? derivative_constant(spec.params(), r, 1) *
                       fb_deriv_eval(spec.shifted(1), r - 1, 1, t)
                 : 0.0;
      const double lhs =
          -(z * (1 - z) * d2 + ((up + 1) * (1 - z) - (mu + 1) * z) * d1);
      const double p_r = fb_eval(spec, r, t);
      worst = std::max(worst, std::abs(lhs - sigma * p_r) /
                                  (sigma * std::max(1.0, std::abs(p_r))));
    }
  }
  return worst;
}

double inverse_inequality_ratio(const BackwardSpec& spec, int N, int samples,
                                std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int M = std::max(4 * N, 1);
  const QuadratureRule rule = gauss_rule(spec.params(), M);
  const QuadratureRule rule_d = gauss_rule(spec.params().shifted(1), M);
  const double bound = std::sqrt(N * (N + spec.mu() + spec.upsilon() + 1));
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> c(N + 1);
    for (double& ci : c) ci = dist(gen);
    // ||phi||_kappa and ||d_t phi||_{kappa~}; the latter is the
    // (1-z)^{mu+1} z^{upsilon+1}-weighted norm of d phi / dz.
    double n0 = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double t = map_inverse(spec, rule.nodes[k]);
      double v = 0.0;
      for (int r = 0; r <= N; ++r) v += c[r] * fb_eval(spec, r, t);
      n0 += rule.weights[k] * v * v;
    }
    double n1 = 0.0;
    for (std::size_t k = 0; k < rule_d.size(); ++k) {
      const double t = map_inverse(spec, rule_d.nodes[k]);
      double v = 0.0;
      for (int r = 1; r <= N; ++r) v += c[r] * fb_deriv_eval(spec, r, 1, t);
      n1 += rule_d.weights[k] * v * v;
    }
    worst = std::max(worst, std::sqrt(n1) / (bound * std::sqrt(n0)));
  }
  return worst;
}

double polynomial_recovery_error(double theta, int N, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> coeffs(N + 1);
  for (double& c : coeffs) c = dist(gen);
  const ProblemDefinition problem = manufactured_polynomial(theta, coeffs);
  const BackwardSpec spec(-0.25, -0.25, 1.0);
  const CollocationSolution sol = solve(problem, spec, N);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.values.size(); ++i) {
    worst = std::max(worst, std::abs(sol.values[i] - (*problem.exact)(sol.nodes_gap[i])));
  }
  return worst;
}

double oracle_doubling_change(const ProblemDefinition& problem,
                              const OracleConfig& cfg) {
  const OracleConfig fine = cfg.refined();
  const Kernel kernel = problem.kernel;
  double worst = 0.0;
  for (double t : kSourceProbes) {
    const double a = oracle_kr_single(*problem.exact, problem.theta, kernel, 1 - t, cfg);
    const double b = oracle_kr_single(*problem.exact, problem.theta, kernel, 1 - t, fine);
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

LogFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0 ? 1 - ss_res / syy : 1.0;
  return fit;
}

LogFit lebesgue_log_fit(const BackwardSpec& spec, const std::vector<int>& Ns,
                        int samples) {
  std::vector<double> x, y;
  for (int N : Ns) {
    x.push_back(std::log(static_cast<double>(N)));
    y.push_back(lebesgue_constant(spec, N, samples));
  }
  return linear_fit(x, y);
}

namespace {

CheckRow at_most(std::string name, double measured, double threshold,
                 std::string detail = {}) {
  return {std::move(name), measured, threshold, measured <= threshold,
          std::move(detail)};
}

}  // namespace

std::vector<CheckRow> run_selftest(bool quick, std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const std::pair<double, double> families[] = {
      {-0.25, -0.25}, {-0.5, -0.5}, {0.0, 0.0}, {0.3, 0.3}};
  const double rhos[] = {1.0, 0.5, 1.0 / 3.0};

  GramResult g;
  double exactness = 0.0, fd = 0.0, sl = 0.0, inverse = 0.0;
  for (const auto& [mu, up] : families) {
    exactness = std::max(exactness, quadrature_exactness({mu, up}, 40));
    for (double rho : rhos) {
      const BackwardSpec spec(mu, up, rho);
      const GramResult gi = gram(spec, 12);
      g.max_offdiag = std::max(g.max_offdiag, gi.max_offdiag);
      g.max_diag_rel = std::max(g.max_diag_rel, gi.max_diag_rel);
      fd = std::max(fd, derivative_fd_error(spec, 8, 20, seed));
      sl = std::max(sl, sturm_liouville_residual(spec, 8, 10));
      for (int N : {4, 8, 16}) {
        inverse = std::max(inverse, inverse_inequality_ratio(spec, N, 20, seed + N));
      }
    }
  }
  exactness = std::max(exactness, quadrature_exactness({2.0, -2.0 / 3.0}, 40));
  exactness = std::max(exactness, quadrature_exactness({5.0, -0.5}, 40));
  rows.push_back(at_most("orthogonality: off-diagonal", g.max_offdiag, 1e-11));
  rows.push_back(at_most("orthogonality: norms", g.max_diag_rel, 1e-11));
  rows.push_back(at_most("quadrature exactness", exactness, 1e-11));
  rows.push_back(at_most("derivative identity vs FD", fd, 1e-6));
  rows.push_back(at_most("Sturm-Liouville residual", sl, 1e-8));
  rows.push_back(at_most("inverse inequality ratio", inverse, 1 + 1e-8));

  double recovery = 0.0;
  for (double theta : {0.3, 0.5, 0.7}) {
    for (int N : {6, 10, 14}) {
      recovery = std::max(recovery, polynomial_recovery_error(theta, N, seed + N));
    }
  }
  rows.push_back(at_most("polynomial recovery", recovery, 1e-10));

  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  const ProblemDefinition builtins[] = {
      example1(0.5), example1(2.0 / 3.0), case_i(0.5, r2, r3),
      case_i(2.0 / 3.0, r2, r3), case_ii(0.5, r2, r3)};
  double consistency = 0.0, doubling = 0.0;
  for (const auto& p : builtins) {
    consistency = std::max(consistency, source_consistency_error(p));
    doubling = std::max(doubling, oracle_doubling_change(p));
  }
  rows.push_back(at_most("source consistency", consistency, 1e-9));
  rows.push_back(at_most("oracle panel doubling", doubling, 1e-11));

  std::vector<int> Ns = {4, 8, 16, 32};
  if (!quick) Ns.push_back(64);
  for (double rho : {1.0, 0.5}) {
    const LogFit fit = lebesgue_log_fit(BackwardSpec(-0.5, -0.5, rho), Ns, 2001);
    char detail[64];
    std::snprintf(detail, sizeof detail, "rho=%g R^2=%.4f", rho, fit.r_squared);
    CheckRow row = at_most("Lebesgue growth c in c log N", fit.slope, 3.0, detail);
    row.pass = row.pass && fit.r_squared > 0.9;
    rows.push_back(row);
  }
  return rows;
}

std::string format_table(const std::vector<CheckRow>& rows) {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-*s  %-11s  %-11s  %s\n",
                static_cast<int>(width), "check", "measured", "threshold", "result");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-*s  %-11.3e  %-11.3e  %s",
                  static_cast<int>(width), r.name.c_str(), r.measured,
                  r.threshold, r.pass ? "PASS" : "FAIL");
    out << buf;
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
  }
  return out.str();
}

}  // namespace fbj::checks
