#include "fbj/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbj/errors.hpp"

namespace fbj {

GapFunction from_t(std::function<double(double t)> f) {
  return [f = std::move(f)](double s) { return f(1.0 - s); };
}

double eval_expansion(const Expansion& e, double t) {
  return eval_expansion_gap(e, 1.0 - t);
}

double eval_expansion_gap(const Expansion& e, double s) {
  const double z = z_from_gap(e.spec.rho(), s);
  return jacobi_clenshaw(e.spec.params(), e.coeffs, 2.0 * z - 1.0);
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) w[j] /= (nodes[j] - nodes[k]);
    }
  }
  double scale = 0.0;
  for (double v : w) scale = std::max(scale, std::abs(v));
  if (scale > 0.0) {
    for (double& v : w) v /= scale;
  }
  return w;
}

Interpolant::Interpolant(BackwardSpec spec, std::vector<double> nodes_z,
                         std::vector<double> values)
    : spec_(spec), nodes_z_(std::move(nodes_z)), values_(std::move(values)) {
  if (nodes_z_.empty() || nodes_z_.size() != values_.size()) {
    throw DomainError("Interpolant: need matching, nonempty node/value lists");
  }
  for (std::size_t i = 1; i < nodes_z_.size(); ++i) {
    if (!(nodes_z_[i] > nodes_z_[i - 1])) {
      throw DomainError("Interpolant: nodes must be strictly increasing");
    }
  }
  bary_ = barycentric_weights(nodes_z_);
}

int Interpolant::coincident_node(double z) const {
  constexpr double kExactNode = 1e-15;
  const auto it = std::lower_bound(nodes_z_.begin(), nodes_z_.end(), z);
  int best = -1;
  double best_dist = kExactNode;
  for (auto cand : {it, it == nodes_z_.begin() ? it : it - 1}) {
    if (cand == nodes_z_.end()) continue;
    const double d = std::abs(*cand - z);
    if (d <= best_dist) {
      best_dist = d;
      best = static_cast<int>(cand - nodes_z_.begin());
    }
  }
  return best;
}

double Interpolant::eval_z(double z) const {
  if (const int j = coincident_node(z); j >= 0) return values_[j];
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < nodes_z_.size(); ++j) {
    const double c = bary_[j] / (z - nodes_z_[j]);
    num += c * values_[j];
    den += c;
  }
  return num / den;
}

double Interpolant::eval(double t) const { return eval_z(map_forward(spec_, t)); }

double Interpolant::eval_gap(double s) const {
  return eval_z(z_from_gap(spec_.rho(), s));
}

void Interpolant::cardinals_z(double z, std::span<double> out) const {
  const std::size_t n = nodes_z_.size();
  if (const int j = coincident_node(z); j >= 0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[j] = 1.0;
    return;
  }
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = bary_[j] / (z - nodes_z_[j]);
    den += out[j];
  }
  for (std::size_t j = 0; j < n; ++j) out[j] /= den;
}

double Interpolant::lebesgue_function_z(double z) const {
  if (coincident_node(z) >= 0) return 1.0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < nodes_z_.size(); ++j) {
    const double c = bary_[j] / (z - nodes_z_[j]);
    num += std::abs(c);
    den += c;
  }
  return num / std::abs(den);
}

int default_quad_size(int N) { return std::max(2 * N, N + 32); }

Expansion project(const BackwardSpec& spec, int N, const GapFunction& f,
                  int quad_size) {
  if (N < 0) throw DomainError("project: N must be nonnegative");
  if (quad_size == 0) quad_size = default_quad_size(N);
  if (quad_size < N + 1) throw DomainError("project: quad_size must be >= N + 1");
  const QuadratureRule rule = gauss_rule(spec.params(), quad_size);
  std::vector<double> coeffs(N + 1, 0.0);
  std::vector<double> basis(N + 1);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double z = rule.nodes[q];
    const double fw = f(gap_from_z(spec.rho(), z)) * rule.weights[q];
    const double x = 2.0 * z - 1.0;
    double prev = 0.0;
    double cur = 1.0;
    for (int r = 0; r <= N; ++r) {
      basis[r] = cur;
      const auto [a, b, c] = jacobi_recurrence(spec.params(), r);
      const double next = (a * x + b) * cur - c * prev;
      prev = cur;
      cur = next;
    }
    for (int r = 0; r <= N; ++r) coeffs[r] += fw * basis[r];
  }
  for (int r = 0; r <= N; ++r) coeffs[r] /= jacobi_norm(spec.params(), r);
  return {spec, std::move(coeffs)};
}

Interpolant interpolate(const BackwardSpec& spec, int N, const GapFunction& f) {
  std::vector<double> nodes = fb_nodes_z(spec, N);
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    values[i] = f(gap_from_z(spec.rho(), nodes[i]));
  }
  return Interpolant(spec, std::move(nodes), std::move(values));
}

double weighted_l2_error(const BackwardSpec& spec, const GapFunction& f,
                         const GapFunction& g, int quad_size) {
  if (quad_size < 1) throw DomainError("weighted_l2_error: quad_size must be >= 1");
  const QuadratureRule rule = gauss_rule(spec.params(), quad_size);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double s = gap_from_z(spec.rho(), rule.nodes[q]);
    const double d = f(s) - g(s);
    sum += rule.weights[q] * d * d;
  }
  return std::sqrt(sum);
}

std::vector<double> linf_grid_gaps(double rho, int samples) {
  if (samples < 2) throw DomainError("linf grid: need at least 2 samples");
  const double z_lo = z_from_gap(rho, 1.0 - 1e-6);
  const double z_hi = 1.0 - 1e-12;
  std::vector<double> gaps(samples);
  for (int k = 0; k < samples; ++k) {
    const double z = z_lo + (z_hi - z_lo) * k / (samples - 1);
    gaps[k] = gap_from_z(rho, z);
  }
  return gaps;
}

double linf_error(const BackwardSpec& spec, const GapFunction& f,
                  const GapFunction& g, int samples) {
  double err = 0.0;
  for (double s : linf_grid_gaps(spec.rho(), samples)) {
    err = std::max(err, std::abs(f(s) - g(s)));
  }
  return err;
}

double lebesgue_constant(const BackwardSpec& spec, int N, int samples) {
  if (N < 1) throw DomainError("lebesgue_constant: N must be >= 1");
  if (samples < 2) throw DomainError("lebesgue_constant: need >= 2 samples");
  const Interpolant ip(spec, fb_nodes_z(spec, N),
                       std::vector<double>(N + 1, 0.0));
  double lambda = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double z = static_cast<double>(k) / (samples - 1);
    lambda = std::max(lambda, ip.lebesgue_function_z(z));
  }
  return lambda;
}

}  // namespace fbj
