#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "fbj/errors.hpp"
#include "fbj/problems.hpp"
#include "fbj/special_functions.hpp"
#include "fbj/volterra.hpp"

using namespace fbj;

namespace {

ProblemDefinition unit_problem(double theta, GapFunction source) {
  ProblemDefinition p;
  p.label = "unit";
  p.theta = theta;
  p.kernel = unit_kernel();
  p.source = std::move(source);
  return p;
}

double max_nodal_error(const CollocationSolution& sol, const GapFunction& exact) {
  double e = 0;
  for (std::size_t i = 0; i < sol.values.size(); ++i)
    e = std::max(e, std::abs(sol.values[i] - exact(sol.nodes_gap[i])));
  return e;
}

}  // namespace

TEST_CASE("singular_factor: limits and the series splice") {
  for (double rho : {0.5, 1.0 / 3, 0.1}) {
    for (double theta : {0.2, 0.5, 0.9}) {
      CHECK(singular_factor(rho, theta, 0.0) == doctest::Approx(std::pow(rho, theta)).epsilon(1e-15));
      for (double eta : {9.99e-7, 1e-7, 1e-9, 1e-12}) {
        const double series = singular_factor(rho, theta, eta);
        const double direct = singular_factor_direct(rho, theta, eta);
        CHECK(std::abs(series - direct) <= 1e-12 * direct);
      }
      const double below = singular_factor(rho, theta, 1e-6 * (1 - 1e-12));
      const double above = singular_factor(rho, theta, 1e-6);
      CHECK(std::abs(below - above) <= 1e-13 * above);
    }
  }
  for (double eta : {0.0, 1e-9, 0.3, 0.999}) CHECK(singular_factor(1.0, 0.5, eta) == 1.0);
  // rho = 1/2: the inner ratio is 2 - eta.
  for (double eta : {0.1, 0.5, 0.9}) {
    CHECK(singular_factor(0.5, 0.5, eta) == doctest::Approx(1 / std::sqrt(2 - eta)).epsilon(1e-15));
  }
}

TEST_CASE("kernel_transform") {
  const ProblemDefinition p = unit_problem(0.5, [](double) { return 0.0; });
  const BackwardSpec spec(-0.25, -0.25, 0.5);
  // (1 - 0)^{1/2} / (1/2) * (5/4)^{-1/2}.
  CHECK(kernel_transform(p, spec, 0.0, 0.75) == doctest::Approx(2 / std::sqrt(1.25)).epsilon(1e-15));
  CHECK(kernel_transform(p, spec, 0.75, 0.75) == doctest::Approx(1 / std::sqrt(1.25)).epsilon(1e-15));
  CHECK_THROWS_AS(kernel_transform(p, spec, 1.0, 0.5), DomainError);

  ProblemDefinition q = p;
  q.kernel = [](double t, double r) { return t + 2 * r; };
  // varrho_0(3/4) = 1 - (1/4)^2.
  CHECK(kernel_transform(q, spec, 0.0, 0.75) ==
        doctest::Approx(2 / std::sqrt(1.25) * 2 * (1 - 1.0 / 16)).epsilon(1e-15));
}

TEST_CASE("discrete operator: constants and a polynomial") {
  const ProblemDefinition p = unit_problem(0.5, [](double) { return 0.0; });
  for (const BackwardSpec& spec : {BackwardSpec(0, 0, 1), BackwardSpec(-0.25, -0.25, 0.5)}) {
    const CollocationSystem sys(p, spec, 20);
    for (int i = 0; i <= 20; ++i) {
      CHECK(sys.discrete_operator([](double) { return 0.0; }, i) == 0.0);
      const double ref = 2 * std::sqrt(sys.nodes_gap()[i]);
      CHECK(std::abs(sys.discrete_operator([](double) { return 1.0; }, i) - ref) <= 1e-13);
    }
  }
  // rho = 1: the 5-point rule integrates the quadratic exactly.
  const CollocationSystem sys(p, BackwardSpec(0, 0, 1), 4);
  for (int i = 0; i <= 4; ++i) {
    const double s = sys.nodes_gap()[i];
    const double ref = std::pow(s, 2.5) * beta(0.5, 3);
    CHECK(sys.discrete_operator([](double g) { return g * g; }, i) == doctest::Approx(ref).epsilon(1e-14));
    CHECK(discrete_operator(p, BackwardSpec(0, 0, 1), 4, [](double g) { return g * g; }, i) ==
          doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("assemble: zero kernel, row sums, interpolant form") {
  ProblemDefinition zero = unit_problem(0.5, [](double s) { return std::exp(s); });
  zero.kernel = [](double, double) { return 0.0; };
  const BackwardSpec spec(-0.25, -0.25, 0.5);
  const CollocationSystem zs(zero, spec, 8);
  const AssembledSystem a0 = zs.assemble();
  CHECK((a0.matrix - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i <= 8; ++i) CHECK(a0.rhs(i) == std::exp(zs.nodes_gap()[i]));

  const ProblemDefinition p = unit_problem(0.3, [](double) { return 1.0; });
  const CollocationSystem sys(p, spec, 12);
  const AssembledSystem a = sys.assemble();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(13);
  const Eigen::VectorXd ku = ones - a.matrix * ones;
  for (int i = 0; i <= 12; ++i) {
    CHECK(std::abs(ku(i) - sys.discrete_operator([](double) { return 1.0; }, i)) <= 1e-13);
  }

  // A u for nodal values of a function matches the interpolant-based operator.
  const GapFunction f = [](double s) { return std::cos(2 * s); };
  Eigen::VectorXd v(13);
  for (int i = 0; i <= 12; ++i) v(i) = f(sys.nodes_gap()[i]);
  const Interpolant ip = interpolate(spec, 12, f);
  const Eigen::VectorXd av = v - a.matrix * v;
  for (int i = 0; i <= 12; ++i) CHECK(std::abs(av(i) - sys.discrete_operator(ip, i)) <= 1e-13);
}

TEST_CASE("solve recovers polynomial solutions when rho = 1") {
  for (double theta : {0.3, 0.5, 0.7}) {
    const ProblemDefinition p = manufactured_polynomial(theta, {1.0, -2.0, 0.5});
    for (int N : {6, 10, 14}) {
      const CollocationSolution sol = solve(p, BackwardSpec(0, 0, 1), N);
      CHECK(max_nodal_error(sol, *p.exact) <= 1e-12);
      CHECK(sol.diagnostics.residual <= 1e-13);
      CHECK(sol.diagnostics.warnings.empty());
    }
  }
  const ProblemDefinition sq = manufactured_polynomial(0.5, {0, 0, 1});
  const CollocationSolution sol = solve(sq, BackwardSpec(-0.25, -0.25, 1), 6);
  CHECK(linf_error(sol.spec, *sq.exact, [&](double s) { return sol.eval_gap(s); }) <= 1e-13);
}

TEST_CASE("solve: Example 1 and diagnostics") {
  const ProblemDefinition p = example1(0.5);
  const BackwardSpec spec(-0.25, -0.25, 0.5);
  const CollocationSolution sol = solve(p, spec, 20);
  REQUIRE(sol.values.size() == 21);
  CHECK(sol.nodes_t.size() == 21);
  for (std::size_t i = 0; i < 21; ++i) CHECK(sol.eval_gap(sol.nodes_gap[i]) == sol.values[i]);
  const double err = linf_error(spec, *p.exact, [&](double s) { return sol.eval_gap(s); });
  CHECK(err <= 1e-10);
  CHECK(sol.diagnostics.residual <= 1e-12);
  CHECK(sol.diagnostics.condition_estimate >= 1.0);
  CHECK(sol.diagnostics.condition_estimate < kIllConditioned);
  CHECK(sol.diagnostics.assembly_ms >= 0.0);
}

TEST_CASE("a finer inner rule changes little once the solution is resolved") {
  const ProblemDefinition p = example1(0.5);
  const BackwardSpec spec(-0.25, -0.25, 0.5);
  for (int N : {24, 28}) {
    const CollocationSolution a = solve(p, spec, N);
    const CollocationSolution b = solve(p, spec, N, {2 * N + 1});
    double diff = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
    CHECK(diff <= 1e-10);
  }
}

TEST_CASE("weakly singular limit theta -> 0 approaches the ODE u' = g' - u") {
  // theta = 0 turns the equation into u(t) = cos t + int_t^1 u, whose solution
  // is (cos t - sin t)/2 + C e^{-t} with u(1) = cos 1.
  const double c = std::exp(1.0) * (std::cos(1.0) + std::sin(1.0)) / 2;
  const GapFunction exact = [c](double s) {
    const double t = 1 - s;
    return (std::cos(t) - std::sin(t)) / 2 + c * std::exp(-t);
  };
  const ProblemDefinition p = unit_problem(1e-6, [](double s) { return std::cos(1 - s); });
  const CollocationSolution sol = solve(p, BackwardSpec(0, 0, 1), 14);
  CHECK(linf_error(sol.spec, exact, [&](double s) { return sol.eval_gap(s); }) <= 1e-5);
}

TEST_CASE("source failures name the node") {
  const BackwardSpec spec(0, 0, 1);
  const ProblemDefinition throwing = unit_problem(0.5, [](double s) -> double {
    if (s < 0.5) throw std::runtime_error("boom");
    return 1.0;
  });
  try {
    (void)solve(throwing, spec, 6);
    FAIL("expected SourceEvaluationError");
  } catch (const SourceEvaluationError& e) {
    const CollocationSystem sys(throwing, spec, 6);
    CHECK(sys.nodes_gap()[e.node_index()] < 0.5);
    CHECK(std::string(e.what()).find("boom") != std::string::npos);
  }
  const ProblemDefinition nan_source =
      unit_problem(0.5, [](double) { return std::numeric_limits<double>::quiet_NaN(); });
  try {
    (void)solve(nan_source, spec, 6);
    FAIL("expected SourceEvaluationError");
  } catch (const SourceEvaluationError& e) {
    CHECK(e.node_index() == 0);
  }
}

TEST_CASE("validate_problem") {
  const GapFunction g = [](double) { return 1.0; };
  CHECK_NOTHROW(validate_problem(unit_problem(0.5, g)));
  CHECK_THROWS_AS(validate_problem(unit_problem(0.0, g)), DomainError);
  CHECK_THROWS_AS(validate_problem(unit_problem(1.0, g)), DomainError);
  CHECK_THROWS_AS(validate_problem(unit_problem(std::nan(""), g)), DomainError);
  ProblemDefinition bad = unit_problem(0.5, g);
  bad.kernel = [](double t, double r) { return 1 / (r - t - 0.3); };
  CHECK_THROWS_AS(validate_problem(bad), DomainError);
  ProblemDefinition missing = unit_problem(0.5, nullptr);
  CHECK_THROWS_AS(validate_problem(missing), DomainError);
  CHECK_THROWS_AS(solve(unit_problem(1.5, g), BackwardSpec(0, 0, 1), 4), DomainError);
}
