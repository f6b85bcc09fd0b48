#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "xibergman/polynomial.hpp"

namespace xib {

/// Matrix whose entries are polynomials in w (holomorphic matrix-valued
/// functions of w). Row-major storage.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t w_arity);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t w_arity() const { return m_; }

  Polynomial& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Eigen::MatrixXcd evaluate(std::span<const Complex> w) const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  double max_abs_coeff() const;
  /// Every entry identically zero, coefficients compared against
  /// rel_tol * scale.
  bool is_zero(double abs_tol) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t m_ = 0;
  std::vector<Polynomial> e_;
};

/// Exact symbolic determinant of a square polynomial matrix by Laplace
/// expansion over column subsets (2^k k products; intended for small k).
/// The empty matrix has determinant 1.
Polynomial determinant(const PolyMatrix& a);

}  // namespace xib
