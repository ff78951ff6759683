#include "fbj/dense_lu.hpp"

#include <cmath>
#include <string>

#include "fbj/errors.hpp"

namespace fbj {

DenseLU::DenseLU(Eigen::MatrixXd a) : lu_(std::move(a)) {
  const Eigen::Index n = lu_.rows();
  if (lu_.cols() != n) throw DomainError("DenseLU: matrix must be square");
  norm1_ = n > 0 ? lu_.cwiseAbs().colwise().sum().maxCoeff() : 0.0;
  perm_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) perm_[i] = i;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    double pmax = std::abs(lu_(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > pmax) {
        pmax = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (pmax == 0.0) {
      throw SingularMatrixError(static_cast<std::size_t>(k),
                                "singular matrix: zero pivot in column " +
                                    std::to_string(k));
    }
    if (p != k) {
      lu_.row(k).swap(lu_.row(p));
      std::swap(perm_[k], perm_[p]);
    }
    const double pivot = lu_(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double l = lu_(i, k) / pivot;
      lu_(i, k) = l;
      if (l == 0.0) continue;
      for (Eigen::Index j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

Eigen::VectorXd DenseLU::solve(const Eigen::VectorXd& b) const {
  const Eigen::Index n = size();
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = b(perm_[i]);
    for (Eigen::Index j = 0; j < i; ++j) s -= lu_(i, j) * x(j);
    x(i) = s;
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = x(i);
    for (Eigen::Index j = i + 1; j < n; ++j) s -= lu_(i, j) * x(j);
    x(i) = s / lu_(i, i);
  }
  return x;
}

Eigen::VectorXd DenseLU::solve_transpose(const Eigen::VectorXd& b) const {
  // A^T x = b with PA = LU  =>  U^T L^T (P x) = b.
  const Eigen::Index n = size();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = b(i);
    for (Eigen::Index j = 0; j < i; ++j) s -= lu_(j, i) * y(j);
    y(i) = s / lu_(i, i);
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = y(i);
    for (Eigen::Index j = i + 1; j < n; ++j) s -= lu_(j, i) * y(j);
    y(i) = s;
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(perm_[i]) = y(i);
  return x;
}

double DenseLU::condition_estimate() const {
  const Eigen::Index n = size();
  if (n == 0) return 0.0;
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  double est = 0.0;
  Eigen::Index last_j = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Eigen::VectorXd y = solve(x);
    est = y.lpNorm<1>();
    Eigen::VectorXd xi(n);
    for (Eigen::Index i = 0; i < n; ++i) xi(i) = y(i) >= 0.0 ? 1.0 : -1.0;
    const Eigen::VectorXd z = solve_transpose(xi);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x) || j == last_j) break;
    x.setZero();
    x(j) = 1.0;
    last_j = j;
  }
  // Higham's alternating-sign safeguard.
  Eigen::VectorXd alt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    alt(i) = sign * (1.0 + static_cast<double>(i) / std::max<Eigen::Index>(n - 1, 1));
  }
  const double alt_est = 2.0 * solve(alt).lpNorm<1>() / (3.0 * n);
  return norm1_ * std::max(est, alt_est);
}

}  // namespace fbj
