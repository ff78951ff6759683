#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fbj/approximation.hpp"
#include "fbj/errors.hpp"

using namespace fbj;

namespace {

// A random element of P_N^rho, as a function of s = 1 - t.
GapFunction random_rho_polynomial(const BackwardSpec& spec, int N, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-1, 1);
  std::vector<double> c(N + 1);
  for (double& ci : c) ci = dist(gen);
  return [spec, c](double s) {
    const double z = z_from_gap(spec.rho(), s);
    double v = 0;
    for (std::size_t r = 0; r < c.size(); ++r) v += c[r] * shifted_jacobi(spec.params(), static_cast<int>(r), z);
    return v;
  };
}

const BackwardSpec kSpecs[] = {{-0.25, -0.25, 0.5}, {0, 0, 1}, {-0.5, -0.5, 1.0 / 3}, {0.3, -0.2, 0.25}};

}  // namespace

TEST_CASE("project: basis functions and constants") {
  for (const auto& spec : kSpecs) {
    const Expansion e3 = project(spec, 6, [&](double s) {
      return shifted_jacobi(spec.params(), 3, z_from_gap(spec.rho(), s));
    });
    for (int r = 0; r <= 6; ++r) CHECK(std::abs(e3.coeffs[r] - (r == 3 ? 1.0 : 0.0)) <= 1e-13);
    const Expansion e1 = project(spec, 5, [](double) { return 1.0; });
    for (int r = 0; r <= 5; ++r) CHECK(std::abs(e1.coeffs[r] - (r == 0 ? 1.0 : 0.0)) <= 1e-13);
  }
}

TEST_CASE("project: t^2 in shifted Legendre polynomials") {
  const Expansion e = project({0, 0, 1}, 2, from_t([](double t) { return t * t; }), 3);
  CHECK(e.coeffs[0] == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(e.coeffs[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(e.coeffs[2] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK_THROWS_AS(project({0, 0, 1}, 4, [](double) { return 1.0; }, 4), DomainError);
}

TEST_CASE("project: idempotence and residual orthogonality") {
  for (const auto& spec : kSpecs) {
    const GapFunction f = [&](double s) { return std::sin(3 * z_from_gap(spec.rho(), s)); };
    const Expansion e = project(spec, 8, f);
    const Expansion e2 = project(spec, 8, [&](double s) { return eval_expansion_gap(e, s); });
    for (int r = 0; r <= 8; ++r) CHECK(std::abs(e.coeffs[r] - e2.coeffs[r]) <= 1e-12);

    const auto rule = gauss_rule(spec.params(), 40);
    for (int r = 0; r <= 8; ++r) {
      double ip = 0;
      for (std::size_t k = 0; k < rule.size(); ++k) {
        const double s = gap_from_z(spec.rho(), rule.nodes[k]);
        ip += rule.weights[k] * (f(s) - eval_expansion_gap(e, s)) * shifted_jacobi(spec.params(), r, rule.nodes[k]);
      }
      CHECK(std::abs(ip) <= 1e-10);
    }
  }
}

TEST_CASE("eval_expansion") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> dist(-1, 1);
  for (const auto& spec : kSpecs) {
    CHECK(eval_expansion({spec, {2.5, 0, 0}}, 0.37) == doctest::Approx(2.5).epsilon(1e-15));
    for (int r = 0; r <= 6; ++r) {
      std::vector<double> c(7, 0.0);
      c[r] = 1;
      CHECK(eval_expansion({spec, c}, 0.41) == doctest::Approx(fb_eval(spec, r, 0.41)).epsilon(1e-13));
    }
    for (int N : {8, 32}) {
      std::vector<double> c(N + 1);
      for (double& ci : c) ci = dist(gen);
      for (double t : {0.0, 0.25, 0.6, 0.95}) {
        double direct = 0;
        for (int r = 0; r <= N; ++r) direct += c[r] * fb_eval(spec, r, t);
        CHECK(std::abs(eval_expansion({spec, c}, t) - direct) <= 1e-13 * std::max(1.0, std::abs(direct)) * N);
      }
    }
  }
}

TEST_CASE("interpolate: nodal exactness, constants, N = 0") {
  for (const auto& spec : kSpecs) {
    const GapFunction f = [](double s) { return std::exp(-s) + s * s; };
    const Interpolant ip = interpolate(spec, 10, f);
    const auto nodes = fb_nodes_z(spec, 10);
    for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(ip.eval_z(nodes[i]) == ip.values()[i]);
    const Interpolant c = interpolate(spec, 12, [](double) { return 3.25; });
    for (double t = 0; t <= 1; t += 0.01) CHECK(std::abs(c.eval(t) - 3.25) <= 1e-14 * 3.25);
    const Interpolant k = interpolate(spec, 0, f);
    CHECK(k.eval(0.1) == k.values()[0]);
    CHECK(k.eval(0.9) == k.values()[0]);
  }
}

TEST_CASE("interpolate: two-point Lagrange form") {
  const BackwardSpec spec(-0.25, -0.25, 0.5);
  const Interpolant ip = interpolate(spec, 1, [&](double s) { return z_from_gap(spec.rho(), s); });
  const double z0 = ip.nodes_z()[0], z1 = ip.nodes_z()[1];
  const double zm = 0.5 * (z0 + z1);
  const double ref = z0 * (zm - z1) / (z0 - z1) + z1 * (zm - z0) / (z1 - z0);
  CHECK(ip.eval_z(zm) == doctest::Approx(ref).epsilon(1e-15));
  CHECK(ip.eval_z(zm) == doctest::Approx(zm).epsilon(1e-15));
}

TEST_CASE("interpolate reproduces P_N^rho") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> dist(0, 1);
  for (const auto& spec : kSpecs) {
    for (int trial = 0; trial < 20; ++trial) {
      const int N = 4 + trial % 13;
      const GapFunction f = random_rho_polynomial(spec, N, gen);
      const Interpolant ip = interpolate(spec, N, f);
      for (int i = 0; i < 100; ++i) {
        const double z = dist(gen);
        const double s = gap_from_z(spec.rho(), z);
        CHECK(std::abs(ip.eval_gap(s) - f(s)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("interpolation of a singular power: near-best accuracy") {
  // Compare with a dense least-squares fit in P_N^rho on a fine z-grid.
  const BackwardSpec spec(-0.25, -0.25, 0.5);
  const int N = 16;
  const GapFunction f = [](double s) { return std::pow(s, std::sqrt(2.0)); };
  const Interpolant ip = interpolate(spec, N, f);
  const auto grid = linf_grid_gaps(spec.rho(), 4001);
  double interp_err = 0;
  for (double s : grid) interp_err = std::max(interp_err, std::abs(ip.eval_gap(s) - f(s)));
  const Expansion ls = project(spec, N, f, 400);
  double proj_err = 0;
  for (double s : grid) proj_err = std::max(proj_err, std::abs(eval_expansion_gap(ls, s) - f(s)));
  CHECK(interp_err <= 10 * proj_err);
}

TEST_CASE("weighted_l2_error") {
  for (const auto& spec : kSpecs) {
    const GapFunction f = [](double s) { return std::cos(s); };
    CHECK(weighted_l2_error(spec, f, f, 20) == 0.0);
    const GapFunction g = [](double s) { return std::cos(s) - 1; };
    CHECK(weighted_l2_error(spec, f, g, 20) ==
          doctest::Approx(std::sqrt(weight_mass(spec.params()))).epsilon(1e-13));
    const GapFunction p2 = [&](double s) { return shifted_jacobi(spec.params(), 2, z_from_gap(spec.rho(), s)); };
    const GapFunction zero = [](double) { return 0.0; };
    CHECK(weighted_l2_error(spec, p2, zero, 10) ==
          doctest::Approx(std::sqrt(jacobi_norm(spec.params(), 2))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(weighted_l2_error({0, 0, 1}, [](double) { return 0.0; }, [](double) { return 0.0; }, 0),
                  DomainError);
}

TEST_CASE("linf grid and error") {
  const auto grid = linf_grid_gaps(0.5, 2001);
  REQUIRE(grid.size() == 2001);
  CHECK(grid.front() == doctest::Approx(1 - 1e-6).epsilon(1e-12));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] < grid[i - 1]);
  CHECK(z_from_gap(0.5, grid.back()) == doctest::Approx(1 - 1e-12).epsilon(1e-15));

  const BackwardSpec spec(0, 0, 1);
  const GapFunction f = [](double s) { return std::sin(s); };
  CHECK(linf_error(spec, f, f) == 0.0);
  CHECK(linf_error(spec, f, [](double s) { return std::sin(s) + 0.125; }) == doctest::Approx(0.125));
  const GapFunction lin = [](double s) { return s; };
  const double e = linf_error(spec, lin, [](double) { return 0.0; }, 1001);
  CHECK(e == linf_grid_gaps(1.0, 1001).front());
  CHECK_THROWS_AS(linf_grid_gaps(0.5, 1), DomainError);
}

TEST_CASE("lebesgue_constant") {
  CHECK(lebesgue_constant({0, 0, 1}, 1, 2001) >= 1.0);
  // Chebyshev: growth like c log N.
  std::vector<double> x, y;
  for (int N : {4, 8, 16, 32}) {
    x.push_back(std::log(N));
    y.push_back(lebesgue_constant({-0.5, -0.5, 1}, N, 2001));
  }
  const double slope = (y.back() - y.front()) / (x.back() - x.front());
  CHECK(slope < 3);
  CHECK(slope > 0.3);
  // mu = upsilon = 1/2: algebraic growth with exponent about 1.
  const double l16 = lebesgue_constant({0.5, 0.5, 1}, 16, 4001);
  const double l64 = lebesgue_constant({0.5, 0.5, 1}, 64, 4001);
  const double exponent = std::log(l64 / l16) / std::log(4.0);
  CHECK(exponent > 0.8);
  CHECK(exponent < 1.2);
  CHECK_THROWS_AS(lebesgue_constant({0, 0, 1}, 0, 100), DomainError);
}

TEST_CASE("inverse inequality on random rho-polynomials") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> dist(-1, 1);
  for (const auto& spec : kSpecs) {
    for (int N : {4, 8, 16}) {
      const auto rule = gauss_rule(spec.params(), 4 * N);
      const auto rule_d = gauss_rule(spec.params().shifted(1), 4 * N);
      const double bound = std::sqrt(N * (N + spec.mu() + spec.upsilon() + 1));
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(N + 1);
        for (double& ci : c) ci = dist(gen);
        double n0 = 0, n1 = 0;
        for (std::size_t k = 0; k < rule.size(); ++k) {
          const double v = jacobi_clenshaw(spec.params(), c, 2 * rule.nodes[k] - 1);
          n0 += rule.weights[k] * v * v;
        }
        for (std::size_t k = 0; k < rule_d.size(); ++k) {
          double v = 0;
          for (int r = 1; r <= N; ++r) {
            v += c[r] * derivative_constant(spec.params(), r, 1) *
                 shifted_jacobi(spec.params().shifted(1), r - 1, rule_d.nodes[k]);
          }
          n1 += rule_d.weights[k] * v * v;
        }
        CHECK(std::sqrt(n1) <= (1 + 1e-8) * bound * std::sqrt(n0));
      }
      // Equality for the top basis function.
      std::vector<double> top(N + 1, 0.0);
      top[N] = 1;
      double n0 = jacobi_norm(spec.params(), N);
      double n1 = std::pow(derivative_constant(spec.params(), N, 1), 2) * jacobi_norm(spec.params().shifted(1), N - 1);
      CHECK(std::sqrt(n1) == doctest::Approx(bound * std::sqrt(n0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("interpolation stability in the weighted norm") {
  const BackwardSpec spec(-0.25, -0.25, 0.5);
  const GapFunction waves = [](double s) { return std::cos(40 * s); };
  const GapFunction step = [](double s) { return s < 0.5 ? -1.0 : 1.0; };
  const GapFunction zero = [](double) { return 0.0; };
  for (int N = 4; N <= 64; N += 4) {
    for (const auto& v : {waves, step}) {
      const Interpolant ip = interpolate(spec, N, v);
      const GapFunction jn = [&ip](double s) { return ip.eval_gap(s); };
      CHECK(weighted_l2_error(spec, jn, zero, 2 * N + 40) <= 5.0);
    }
  }
}
