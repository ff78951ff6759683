#include "fbj/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "fbj/errors.hpp"
#include "fbj/special_functions.hpp"

namespace fbj {

void OracleConfig::validate() const {
  if (panels < 4) throw DomainError("OracleConfig: panels must be >= 4");
  if (points_per_panel < 8) {
    throw DomainError("OracleConfig: points_per_panel must be >= 8");
  }
  if (!(grading_ratio > 0.0 && grading_ratio < 1.0)) {
    throw DomainError("OracleConfig: grading_ratio must lie in (0, 1)");
  }
}

OracleConfig OracleConfig::refined() const {
  return {2 * panels, points_per_panel, std::sqrt(grading_ratio)};
}

namespace {

// Breakpoints 0 < 0.5 r^{P-1} < ... < 0.5 r < 0.5, preceded by 0.
std::vector<double> graded_breakpoints(int panels, double ratio) {
  std::vector<double> b(panels + 1);
  b[0] = 0.0;
  for (int k = 1; k <= panels; ++k) b[k] = 0.5 * std::pow(ratio, panels - k);
  return b;
}

}  // namespace

double oracle_kr_single(const GapFunction& u, double theta, const Kernel& kernel,
                        double gap, const OracleConfig& cfg) {
  cfg.validate();
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("oracle: theta in (0,1)");
  if (!(gap > 0.0)) throw DomainError("oracle: requires t < 1");
  const double expo = 1.0 / (1.0 - theta);
  const double t = 1.0 - gap;
  const QuadratureRule gl = gauss_rule(JacobiParams(0.0, 0.0), cfg.points_per_panel);
  const std::vector<double> breaks = graded_breakpoints(cfg.panels, cfg.grading_ratio);

  // sigma in [0, 1/2]: remaining distance gap * (1 - sigma^expo).
  // w = 1 - sigma in [0, 1/2]: remaining distance gap * (1 - (1 - w)^expo).
  auto left = [&](double sigma) {
    const double s = gap * (1.0 - std::pow(sigma, expo));
    return kernel(t, 1.0 - s) * u(s);
  };
  auto right = [&](double w) {
    const double s = gap * -std::expm1(expo * std::log1p(-w));
    return kernel(t, 1.0 - s) * u(s);
  };

  double sum = 0.0;
  for (int p = 0; p < cfg.panels; ++p) {
    const double a = breaks[p];
    const double h = breaks[p + 1] - a;
    double panel = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) {
      const double x = a + h * gl.nodes[q];
      panel += gl.weights[q] * (left(x) + right(x));
    }
    sum += h * panel;
  }
  return std::pow(gap, 1.0 - theta) / (1.0 - theta) * sum;
}

double oracle_kr_gap(const GapFunction& u, double theta, const Kernel& kernel,
                     double gap, const OracleConfig& cfg) {
  const double coarse = oracle_kr_single(u, theta, kernel, gap, cfg);
  const double fine = oracle_kr_single(u, theta, kernel, gap, cfg.refined());
  if (!(std::abs(fine - coarse) <= kOracleDoublingTolerance)) {
    std::ostringstream msg;
    msg << "oracle: panel doubling changed the result by "
        << std::abs(fine - coarse) << " at t = " << 1.0 - gap;
    throw OracleAccuracyError(msg.str());
  }
  return fine;
}

double oracle_kr(const GapFunction& u, double theta, const Kernel& kernel,
                 double t, const OracleConfig& cfg) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("oracle: t must lie in [0, 1)");
  return oracle_kr_gap(u, theta, kernel, 1.0 - t, cfg);
}

Kernel unit_kernel() {
  return [](double, double) { return 1.0; };
}

namespace {

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("theta must lie in (0, 1)");
  }
}

void require_gamma(double g, const char* name) {
  if (!(g > 0.0)) throw DomainError(std::string(name) + " must be positive");
}

// Source g = u - K_R u with K_R u from the oracle, cached per point.
GapFunction memoized_oracle_source(GapFunction u, double theta) {
  struct Cache {
    std::mutex mutex;
    std::unordered_map<double, double> values;
  };
  auto cache = std::make_shared<Cache>();
  return [u = std::move(u), theta, cache](double s) {
    if (s <= 0.0) return u(0.0);
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->values.find(s); it != cache->values.end()) {
        return it->second;
      }
    }
    const double g = u(s) - oracle_kr_gap(u, theta, unit_kernel(), s);
    std::lock_guard lock(cache->mutex);
    cache->values.emplace(s, g);
    return g;
  };
}

GapFunction example1_exact(double theta) {
  return [theta](double s) {
    if (s <= 0.0) return 0.0;
    return std::pow(s, -theta) * std::sin(s);
  };
}

}  // namespace

GapFunction example1_closed_form_source(double theta) {
  require_theta(theta);
  const double scale = std::sqrt(std::numbers::pi) * std::exp(log_gamma(1.0 - theta));
  const double nu = 0.5 - theta;
  return [theta, scale, nu](double s) {
    if (s <= 0.0) return 0.0;
    const double u = std::pow(s, -theta) * std::sin(s);
    return u - scale * std::pow(s, nu) * std::sin(0.5 * s) * bessel_j(nu, 0.5 * s);
  };
}

ProblemDefinition example1(double theta) {
  require_theta(theta);
  ProblemDefinition p;
  std::ostringstream label;
  label << "example1(theta=" << theta << ")";
  p.label = label.str();
  p.theta = theta;
  p.kernel = unit_kernel();
  p.exact = example1_exact(theta);
  p.source = example1_closed_form_source(theta);
  if (source_consistency_error(p) > 1e-9) {
    p.source = memoized_oracle_source(*p.exact, theta);
    p.label += "[oracle source]";
  }
  return p;
}

namespace {

GapFunction power_pair_source(double theta, double g1, double g2) {
  const double b1 = beta(1.0 - theta, g1 + 1.0);
  const double b2 = beta(1.0 - theta, g2 + 1.0);
  return [=](double s) {
    if (s <= 0.0) return 0.0;
    return std::pow(s, g1) - b1 * std::pow(s, 1.0 - theta + g1) +
           std::pow(s, g2) - b2 * std::pow(s, 1.0 - theta + g2);
  };
}

}  // namespace

ProblemDefinition case_i(double theta, double gamma1, double gamma2) {
  require_theta(theta);
  require_gamma(gamma1, "gamma1");
  require_gamma(gamma2, "gamma2");
  ProblemDefinition p;
  std::ostringstream label;
  label << "case_i(theta=" << theta << ",gamma1=" << gamma1
        << ",gamma2=" << gamma2 << ")";
  p.label = label.str();
  p.theta = theta;
  p.kernel = unit_kernel();
  p.exact = [gamma1, gamma2](double s) {
    if (s <= 0.0) return 0.0;
    return std::pow(s, gamma1) + std::pow(s, gamma2);
  };
  p.source = power_pair_source(theta, gamma1, gamma2);
  return p;
}

ProblemDefinition case_ii(double theta, double gamma1, double gamma2) {
  require_theta(theta);
  require_gamma(gamma1, "gamma1");
  require_gamma(gamma2, "gamma2");
  ProblemDefinition p;
  std::ostringstream label;
  label << "case_ii(theta=" << theta << ",gamma1=" << gamma1
        << ",gamma2=" << gamma2 << ")";
  p.label = label.str();
  p.theta = theta;
  p.kernel = unit_kernel();
  GapFunction u = [gamma1, gamma2](double s) {
    if (s <= 0.0) return 0.0;
    return std::sin(std::pow(s, gamma1) + std::pow(s, gamma2));
  };
  p.exact = u;
  p.source = memoized_oracle_source(u, theta);
  return p;
}

ProblemDefinition single_power(double theta, double gamma) {
  require_theta(theta);
  require_gamma(gamma, "gamma");
  ProblemDefinition p;
  std::ostringstream label;
  label << "power(theta=" << theta << ",gamma=" << gamma << ")";
  p.label = label.str();
  p.theta = theta;
  p.kernel = unit_kernel();
  p.exact = [gamma](double s) { return s <= 0.0 ? 0.0 : std::pow(s, gamma); };
  const double b = beta(1.0 - theta, gamma + 1.0);
  p.source = [=](double s) {
    if (s <= 0.0) return 0.0;
    return std::pow(s, gamma) - b * std::pow(s, 1.0 - theta + gamma);
  };
  return p;
}

ProblemDefinition manufactured_polynomial(double theta,
                                          std::vector<double> coeffs) {
  require_theta(theta);
  ProblemDefinition p;
  p.label = "polynomial";
  p.theta = theta;
  p.kernel = unit_kernel();
  std::vector<double> image(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    image[k] = coeffs[k] * beta(1.0 - theta, k + 1.0);
  }
  p.exact = [coeffs](double s) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * s + coeffs[k];
    return v;
  };
  p.source = [coeffs, image, theta](double s) {
    double u = 0.0;
    double ku = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      u = u * s + coeffs[k];
      ku = ku * s + image[k];
    }
    return u - std::pow(s, 1.0 - theta) * ku;
  };
  return p;
}

double regularity_index(double gamma1, double gamma2) {
  auto is_natural = [](double g) {
    return g >= 1.0 && std::abs(g - std::round(g)) < 1e-12;
  };
  const bool n1 = is_natural(gamma1);
  const bool n2 = is_natural(gamma2);
  if (n1 && n2) return std::numeric_limits<double>::infinity();
  if (!n1 && n2) return gamma1;
  if (n1 && !n2) return gamma2;
  return std::min(gamma1, gamma2);
}

double source_consistency_error(const ProblemDefinition& problem,
                                const OracleConfig& cfg) {
  if (!problem.exact) {
    throw DomainError("source_consistency_error: problem has no exact solution");
  }
  const GapFunction& u = *problem.exact;
  double err = 0.0;
  for (double t : kSourceProbes) {
    const double s = 1.0 - t;
    const double reference =
        u(s) - oracle_kr_gap(u, problem.theta, problem.kernel, s, cfg);
    err = std::max(err, std::abs(problem.source(s) - reference));
  }
  return err;
}

}  // namespace fbj
