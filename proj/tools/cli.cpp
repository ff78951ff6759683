#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "checks.hpp"
#include "fbj/errors.hpp"
#include "fbj/problems.hpp"
#include "fbj/volterra.hpp"
#include "report.hpp"

namespace fbj::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string problem = "example1";
  double theta = 0.5;
  double rho = 0.5;
  double mu = -0.25;
  double upsilon = -0.25;
  int n = 20;
  int n_min = 4;
  int n_max = 32;
  int n_step = 4;
  double gamma1 = std::sqrt(2.0);
  double gamma2 = std::sqrt(3.0);
  std::string l2_weight;
  std::string svg;
  int eval_points = kDefaultSamples;
  std::uint64_t seed = 1;
  bool quick = false;
  bool timings = false;
  std::string out;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "Output file (default: standard output)");
  app->add_option("--seed", o.seed, "Seed for random test functions");
}

void add_problem(CLI::App* app, Options& o) {
  app->add_option("--problem", o.problem, "example1 | case1 | case2 | custom")
      ->check(CLI::IsMember({"example1", "case1", "case2", "custom"}));
  app->add_option("--theta", o.theta, "Kernel singularity exponent in (0, 1)");
  app->add_option("--rho", o.rho, "Mapping exponent in (0, 1]");
  app->add_option("--mu", o.mu, "Jacobi exponent of (1 - z), > -1");
  app->add_option("--upsilon", o.upsilon, "Jacobi exponent of z, > -1");
  app->add_option("--gamma1", o.gamma1, "First exponent of case1/case2/custom");
  app->add_option("--gamma2", o.gamma2, "Second exponent of case1/case2");
  app->add_option("--eval-points", o.eval_points, "Size of the evaluation grid");
  app->add_option("--l2-weight", o.l2_weight, "mu,upsilon of the L2 error weight");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void validate_problem_flags(const Options& o) {
  require(o.theta > 0 && o.theta < 1, "--theta must lie in the open interval (0, 1)");
  require(o.rho > 0 && o.rho <= 1, "--rho must lie in (0, 1]");
  require(o.mu > -1, "--mu must exceed -1");
  require(o.upsilon > -1, "--upsilon must exceed -1");
  require(o.gamma1 > 0, "--gamma1 must be positive");
  require(o.gamma2 > 0, "--gamma2 must be positive");
  require(o.eval_points >= 2, "--eval-points must be at least 2");
}

std::pair<double, double> l2_weight(const Options& o) {
  if (o.l2_weight.empty()) return {o.mu, o.upsilon};
  const auto comma = o.l2_weight.find(',');
  require(comma != std::string::npos, "--l2-weight expects two numbers: mu,upsilon");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = o.l2_weight.substr(0, comma);
    const std::string b = o.l2_weight.substr(comma + 1);
    const double mu = std::stod(a, &used_a);
    const double up = std::stod(b, &used_b);
    require(used_a == a.size() && used_b == b.size(),
            "--l2-weight expects two numbers: mu,upsilon");
    require(mu > -1 && up > -1, "--l2-weight exponents must exceed -1");
    return {mu, up};
  } catch (const std::logic_error&) {
    throw UsageError("--l2-weight expects two numbers: mu,upsilon");
  }
}

ProblemDefinition make_problem(const Options& o) {
  if (o.problem == "example1") return example1(o.theta);
  if (o.problem == "case1") return case_i(o.theta, o.gamma1, o.gamma2);
  if (o.problem == "case2") return case_ii(o.theta, o.gamma1, o.gamma2);
  return single_power(o.theta, o.gamma1);
}

// Writes to --out when given, else to `fallback`.
void emit(const Options& o, const std::string& text, std::ostream& fallback) {
  if (o.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("--out: cannot open " + o.out);
  file << text;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  validate_problem_flags(o);
  require(o.n >= 0, "--n must be nonnegative");
  const ProblemDefinition problem = make_problem(o);
  const BackwardSpec spec(o.mu, o.upsilon, o.rho);
  const CollocationSolution sol = solve(problem, spec, o.n);
  for (const auto& w : sol.diagnostics.warnings) err << "warning: " << w << '\n';

  std::string csv = kSolveHeader;
  csv += '\n';
  for (double s : linf_grid_gaps(o.rho, o.eval_points)) {
    const double u = sol.eval_gap(s);
    csv += format_number(1.0 - s) + ',' + format_number(u) + ',';
    if (problem.exact) {
      const double e = (*problem.exact)(s);
      csv += format_number(e) + ',' + format_number(std::abs(u - e));
    } else {
      csv += ',';
    }
    csv += '\n';
  }
  emit(o, csv, out);
  return kSuccess;
}

int cmd_converge(const Options& o, std::ostream& out, std::ostream& err) {
  validate_problem_flags(o);
  require(o.n_min >= 0, "--n-min must be nonnegative");
  require(o.n_step >= 1, "--n-step must be at least 1");
  require(o.n_min <= o.n_max, "--n-min must not exceed --n-max");
  const auto [l2_mu, l2_up] = l2_weight(o);

  const ProblemDefinition problem = make_problem(o);
  const BackwardSpec spec(o.mu, o.upsilon, o.rho);
  const BackwardSpec l2_spec(l2_mu, l2_up, o.rho);
  if (o.problem == "case1" || o.problem == "case2") {
    const double gamma = regularity_index(o.gamma1, o.gamma2);
    err << "note: regularity index gamma = " << gamma
        << ", transformed regularity 2 gamma / rho + upsilon + 1 = "
        << 2 * gamma / o.rho + o.upsilon + 1 << '\n';
  }

  ConvergenceReport report{problem.label, o.mu, o.upsilon, o.rho, o.theta, {}};
  int failures = 0;
  for (int N = o.n_min; N <= o.n_max; N += o.n_step) {
    ConvergenceRow row;
    row.N = N;
    try {
      const CollocationSolution sol = solve(problem, spec, N);
      for (const auto& w : sol.diagnostics.warnings) err << "warning: N=" << N << ": " << w << '\n';
      row.cond = sol.diagnostics.condition_estimate;
      if (o.timings) {
        row.assembly_ms = sol.diagnostics.assembly_ms;
        row.solve_ms = sol.diagnostics.solve_ms;
      }
      if (problem.exact) {
        const GapFunction u_num = [&sol](double s) { return sol.eval_gap(s); };
        row.linf_error = linf_error(spec, u_num, *problem.exact, o.eval_points);
        row.l2w_error = weighted_l2_error(l2_spec, u_num, *problem.exact,
                                          default_quad_size(N));
      }
    } catch (const std::exception& e) {
      ++failures;
      err << "warning: N=" << N << " failed: " << e.what() << '\n';
    }
    report.rows.push_back(row);
  }
  emit(o, convergence_csv(report), out);
  if (!o.svg.empty()) {
    std::ofstream file(o.svg, std::ios::binary);
    if (!file) throw UsageError("--svg: cannot open " + o.svg);
    file << convergence_svg(report);
  }
  return failures == static_cast<int>(report.rows.size()) ? kNumericalFailure : kSuccess;
}

int cmd_selftest(const Options& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = checks::run_selftest(o.quick, o.seed);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int failed = 0;
  for (const auto& r : rows) {
    if (!r.pass) {
      ++failed;
      err << "selftest: check failed: " << r.name << '\n';
    }
  }
  std::ostringstream text;
  text << checks::format_table(rows);
  text << rows.size() << " checks, " << failed << " failed, "
       << std::llround(seconds * 10) / 10.0 << " s\n";
  emit(o, text.str(), out);
  return failed == 0 ? kSuccess : kSelftestFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Fractional backward Jacobi spectral collocation for adjoint Volterra equations",
               "fbj"};
  app.require_subcommand(1);

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance and tabulate it");
  add_problem(solve_cmd, o);
  add_common(solve_cmd, o);
  solve_cmd->add_option("--n", o.n, "Degree N (N + 1 collocation nodes)");

  CLI::App* converge_cmd = app.add_subcommand("converge", "Error table over a sweep of N");
  add_problem(converge_cmd, o);
  add_common(converge_cmd, o);
  converge_cmd->add_option("--n-min", o.n_min, "Smallest N");
  converge_cmd->add_option("--n-max", o.n_max, "Largest N");
  converge_cmd->add_option("--n-step", o.n_step, "Step in N");
  converge_cmd->add_option("--svg", o.svg, "Also write a semi-log plot here");
  converge_cmd->add_flag("--timings", o.timings,
                         "Fill the assembly_ms/solve_ms columns (not reproducible)");

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suite");
  add_common(selftest_cmd, o);
  selftest_cmd->add_flag("--quick", o.quick, "Skip the N = 64 Lebesgue sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*solve_cmd) return cmd_solve(o, out, err);
    if (*converge_cmd) return cmd_converge(o, out, err);
    return cmd_selftest(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace fbj::cli
