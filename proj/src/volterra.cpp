#include "fbj/volterra.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

#include "fbj/dense_lu.hpp"
#include "fbj/errors.hpp"

namespace fbj {

void validate_problem(const ProblemDefinition& problem) {
  if (!(problem.theta > 0.0 && problem.theta < 1.0)) {
    throw DomainError("problem: theta must lie in (0, 1)");
  }
  if (!problem.kernel || !problem.source) {
    throw DomainError("problem: kernel and source are required");
  }
  constexpr int kSamples = 11;
  for (int a = 0; a < kSamples; ++a) {
    const double t = static_cast<double>(a) / (kSamples - 1);
    for (int b = a; b < kSamples; ++b) {
      const double r = static_cast<double>(b) / (kSamples - 1);
      if (!std::isfinite(problem.kernel(t, r))) {
        std::ostringstream msg;
        msg << "problem: kernel not finite at (" << t << ", " << r << ")";
        throw DomainError(msg.str());
      }
    }
  }
}

double singular_factor_direct(double rho, double theta, double eta) {
  const double ratio = -std::expm1(std::log1p(-eta) / rho) / eta;
  return std::pow(ratio, -theta);
}

double singular_factor(double rho, double theta, double eta) {
  constexpr double kSeriesThreshold = 1e-6;
  if (rho == 1.0) return 1.0;
  if (eta < kSeriesThreshold) {
    const double a = 1.0 / rho;
    const double ratio =
        a - 0.5 * a * (a - 1.0) * eta + a * (a - 1.0) * (a - 2.0) / 6.0 * eta * eta;
    return std::pow(ratio, -theta);
  }
  return singular_factor_direct(rho, theta, eta);
}

double kernel_transform(const ProblemDefinition& problem,
                        const BackwardSpec& spec, double t_i, double eta) {
  if (!(t_i < 1.0)) throw DomainError("kernel_transform: requires t_i < 1");
  const double rho = spec.rho();
  const double theta = problem.theta;
  const double gap_i = 1.0 - t_i;
  const double varrho = 1.0 - gap_i * gap_from_z(rho, eta);
  return std::pow(gap_i, 1.0 - theta) / rho * singular_factor(rho, theta, eta) *
         problem.kernel(t_i, varrho);
}

namespace {

ProblemDefinition validated(ProblemDefinition problem) {
  validate_problem(problem);
  return problem;
}

}  // namespace

CollocationSystem::CollocationSystem(ProblemDefinition problem,
                                     BackwardSpec spec, int N, int quad_points)
    : problem_(validated(std::move(problem))),
      spec_(spec),
      N_(N),
      nodes_z_(fb_nodes_z(spec, N)),
      rule_(gauss_rule(JacobiParams(1.0 / spec.rho() - 1.0, -problem_.theta),
                       quad_points > 0 ? quad_points : N + 1)),
      cardinal_(spec, nodes_z_, std::vector<double>(nodes_z_.size(), 0.0)) {
  nodes_gap_.reserve(nodes_z_.size());
  for (double z : nodes_z_) {
    const double gap = gap_from_z(spec_.rho(), z);
    if (!(gap > 0.0)) {
      throw DomainError("collocation node coincides with the terminal point");
    }
    nodes_gap_.push_back(gap);
  }
  eta_gap_.reserve(rule_.size());
  for (double eta : rule_.nodes) eta_gap_.push_back(gap_from_z(spec_.rho(), eta));
}

std::vector<double> CollocationSystem::nodes_t() const {
  std::vector<double> t;
  t.reserve(nodes_gap_.size());
  for (double s : nodes_gap_) t.push_back(1.0 - s);
  return t;
}

double CollocationSystem::kernel_at(int i, int k) const {
  const double rho = spec_.rho();
  const double theta = problem_.theta;
  const double gap_i = nodes_gap_[i];
  const double varrho = 1.0 - gap_i * eta_gap_[k];
  return std::pow(gap_i, 1.0 - theta) / rho *
         singular_factor(rho, theta, rule_.nodes[k]) *
         problem_.kernel(1.0 - gap_i, varrho);
}

double CollocationSystem::discrete_operator(const GapFunction& phi, int i) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule_.size(); ++k) {
    const int kk = static_cast<int>(k);
    sum += kernel_at(i, kk) * phi(nodes_gap_[i] * eta_gap_[k]) * rule_.weights[k];
  }
  return sum;
}

double CollocationSystem::discrete_operator(const Interpolant& phi, int i) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule_.size(); ++k) {
    // z(varrho_i(eta)) = 1 - (1 - z_i)(1 - eta), exact in the mapped variable.
    const double z = 1.0 - (1.0 - nodes_z_[i]) * (1.0 - rule_.nodes[k]);
    sum += kernel_at(i, static_cast<int>(k)) * phi.eval_z(z) * rule_.weights[k];
  }
  return sum;
}

AssembledSystem CollocationSystem::assemble() const {
  const int n = N_ + 1;
  AssembledSystem sys{Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd(n)};
  std::vector<double> h(n);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < rule_.size(); ++k) {
      const double z = 1.0 - (1.0 - nodes_z_[i]) * (1.0 - rule_.nodes[k]);
      cardinal_.cardinals_z(z, h);
      const double w = kernel_at(i, static_cast<int>(k)) * rule_.weights[k];
      for (int j = 0; j < n; ++j) sys.matrix(i, j) -= w * h[j];
    }
    double g;
    try {
      g = problem_.source(nodes_gap_[i]);
    } catch (const std::exception& e) {
      throw SourceEvaluationError(
          i, "source evaluation failed at node " + std::to_string(i) + ": " +
                 e.what());
    }
    if (!std::isfinite(g)) {
      throw SourceEvaluationError(
          i, "source not finite at node " + std::to_string(i));
    }
    sys.rhs(i) = g;
  }
  return sys;
}

double discrete_operator(const ProblemDefinition& problem,
                         const BackwardSpec& spec, int N, const GapFunction& phi,
                         int i) {
  return CollocationSystem(problem, spec, N).discrete_operator(phi, i);
}

AssembledSystem assemble(const ProblemDefinition& problem,
                         const BackwardSpec& spec, int N) {
  return CollocationSystem(problem, spec, N).assemble();
}

CollocationSolution solve(const ProblemDefinition& problem,
                          const BackwardSpec& spec, int N,
                          const SolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const CollocationSystem system(problem, spec, N, options.quad_points);
  const AssembledSystem sys = system.assemble();
  const auto t1 = Clock::now();
  const DenseLU lu(sys.matrix);
  const Eigen::VectorXd u = lu.solve(sys.rhs);
  const auto t2 = Clock::now();

  SolveDiagnostics diag;
  diag.condition_estimate = lu.condition_estimate();
  diag.assembly_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  diag.solve_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  diag.residual = (sys.matrix * u - sys.rhs).cwiseAbs().maxCoeff();
  if (diag.condition_estimate > kIllConditioned) {
    std::ostringstream msg;
    msg << "collocation matrix is nearly singular (condition estimate "
        << diag.condition_estimate << ")";
    diag.warnings.push_back(msg.str());
  }

  std::vector<double> values(u.data(), u.data() + u.size());
  Interpolant ip(spec, system.nodes_z(), values);
  return {spec,          system.nodes_t(), system.nodes_gap(), std::move(values),
          std::move(ip), std::move(diag)};
}

}  // namespace fbj
