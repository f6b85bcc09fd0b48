#include "xibergman/poly_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace xib {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t w_arity)
    : rows_(rows), cols_(cols), m_(w_arity), e_(rows * cols, Polynomial(w_arity)) {}

Eigen::MatrixXcd PolyMatrix::evaluate(std::span<const Complex> w) const {
  Eigen::MatrixXcd out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).evaluate(w);
  return out;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_ || m_ != o.m_) throw InputError("polynomial matrix shape mismatch");
  PolyMatrix r(rows_, o.cols_, m_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Polynomial& a = (*this)(i, k);
      if (a.empty()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).empty()) r(i, j) += a * o(k, j);
    }
  return r;
}

PolyMatrix PolyMatrix::submatrix(std::span<const std::size_t> rows,
                                 std::span<const std::size_t> cols) const {
  PolyMatrix r(rows.size(), cols.size(), m_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(rows[i], cols[j]);
  return r;
}

double PolyMatrix::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& p : e_) m = std::max(m, p.max_abs_coeff());
  return m;
}

bool PolyMatrix::is_zero(double abs_tol) const {
  return std::all_of(e_.begin(), e_.end(), [&](const Polynomial& p) { return p.is_zero(abs_tol); });
}

Polynomial determinant(const PolyMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t k = a.rows();
  if (k == 0) return Polynomial::constant(a.w_arity(), 1.0);
  if (k > 20) throw InputError("symbolic determinant limited to 20 x 20");
  // dp[mask]: signed sum over injective maps of the first popcount(mask) rows
  // onto the column set mask.
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  std::vector<Polynomial> dp(full + 1, Polynomial(a.w_arity()));
  dp[0] = Polynomial::constant(a.w_arity(), 1.0);
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (dp[mask].empty()) continue;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t c = 0; c < k; ++c) {
      const std::uint32_t bit = std::uint32_t{1} << c;
      if (mask & bit) continue;
      const Polynomial& entry = a(row, c);
      if (entry.empty()) continue;
      // Earlier rows sitting in larger columns are inversions.
      const int inversions = std::popcount(mask >> (c + 1));
      Polynomial term = dp[mask] * entry;
      if (inversions % 2) term = -term;
      dp[mask | bit] += term;
    }
  }
  return dp[full];
}

}  // namespace xib
