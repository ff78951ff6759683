#pragma once

#include <Eigen/Core>
#include <vector>

namespace fbj {

/// LU factorization with row partial pivoting of a small dense matrix.
class DenseLU {
 public:
  /// Throws SingularMatrixError naming the column whose pivot is zero.
  explicit DenseLU(Eigen::MatrixXd a);

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::VectorXd solve_transpose(const Eigen::VectorXd& b) const;

  /// Estimate of the 1-norm condition number ||A||_1 ||A^-1||_1 using the
  /// Hager/Higham estimator for ||A^-1||_1.
  double condition_estimate() const;

  Eigen::Index size() const noexcept { return lu_.rows(); }

 private:
  Eigen::MatrixXd lu_;
  std::vector<Eigen::Index> perm_;  // row i of PA is row perm_[i] of A
  double norm1_ = 0.0;
};

}  // namespace fbj
