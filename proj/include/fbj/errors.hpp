#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fbj {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or partial sum left the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An iterative procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LU factorization hit an exactly zero pivot.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t pivot_index, const std::string& what)
      : std::runtime_error(what), pivot_index_(pivot_index) {}

  std::size_t pivot_index() const noexcept { return pivot_index_; }

 private:
  std::size_t pivot_index_;
};

/// The reference quadrature could not certify its own accuracy.
class OracleAccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluating a user-supplied source failed at a collocation node.
class SourceEvaluationError : public std::runtime_error {
 public:
  SourceEvaluationError(std::size_t node_index, const std::string& what)
      : std::runtime_error(what), node_index_(node_index) {}

  std::size_t node_index() const noexcept { return node_index_; }

 private:
  std::size_t node_index_;
};

}  // namespace fbj
