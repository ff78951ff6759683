#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fbj::cli {

/// Shortest decimal string that round-trips to `v` (at most 17 significant
/// digits); empty for non-finite values.
std::string format_number(double v);
std::string format_number(std::optional<double> v);

struct ConvergenceRow {
  int N = 0;
  std::optional<double> linf_error;
  std::optional<double> l2w_error;
  std::optional<double> cond;
  std::optional<double> assembly_ms;
  std::optional<double> solve_ms;
};

struct ConvergenceReport {
  std::string label;
  double mu = 0.0;
  double upsilon = 0.0;
  double rho = 1.0;
  double theta = 0.5;
  std::vector<ConvergenceRow> rows;  // strictly increasing N
};

inline constexpr const char* kConvergeHeader =
    "N,linf_error,l2w_error,cond,assembly_ms,solve_ms";
inline constexpr const char* kSolveHeader = "t,u_num,u_exact,abs_error";

std::string convergence_csv(const ConvergenceReport& report);

/// Standalone semi-log SVG: N on a linear axis, both error norms on a
/// log10 axis.
std::string convergence_svg(const ConvergenceReport& report);

}  // namespace fbj::cli
