#pragma once

#include <optional>
#include <span>
#include <vector>

#include "xibergman/polynomial.hpp"

namespace xib {

/// Finite-support element xi of l_1^(n): a sparse map alpha -> xi_alpha.
/// It acts on a holomorphic germ F at z0 through its Taylor coefficients,
/// (xi . F)(z0) = sum_alpha xi_alpha F^(alpha)(z0) / alpha!.
class Functional {
 public:
  Functional() = default;
  explicit Functional(std::size_t arity) : coeffs_(arity) {}
  explicit Functional(Polynomial coeffs) : coeffs_(std::move(coeffs)) {}

  static Functional dirac(std::size_t arity);
  static Functional derivative(const MultiIndex& alpha, Complex scale = 1.0);

  std::size_t arity() const { return coeffs_.arity(); }
  const Polynomial::Terms& terms() const { return coeffs_.terms(); }
  /// Coefficients stored as a polynomial keyed by alpha.
  const Polynomial& as_polynomial() const { return coeffs_; }
  Complex coeff(const MultiIndex& alpha) const { return coeffs_.coeff(alpha); }
  void set(const MultiIndex& alpha, Complex c) { coeffs_.set(alpha, c); }

  /// Max |alpha| with xi_alpha != 0; nullopt stands for -infinity (empty).
  std::optional<int> degree() const;

  Functional operator+(const Functional& o) const { return Functional(coeffs_ + o.coeffs_); }
  Functional operator*(Complex s) const { return Functional(coeffs_ * s); }

 private:
  Polynomial coeffs_;
};

/// Taylor expansion F(z) = sum a_alpha (z - center)^alpha. Polynomial data is
/// exact; data cut at a finite order records it in truncation_degree.
struct TaylorData {
  std::vector<Complex> center;
  Polynomial coeffs;  // in the offset variable u = z - center
  std::optional<int> truncation_degree;

  static TaylorData of_polynomial(const Polynomial& p, std::span<const Complex> center);
};

/// (xi . F)(z0) = sum xi_alpha a_alpha.
Complex apply(const Functional& xi, const TaylorData& taylor);

/// Same polynomial re-expanded about a new center (exact binomial shift).
TaylorData recenter(const TaylorData& poly, std::span<const Complex> new_center);

/// sum |xi_alpha| rho^|alpha|.
double norm_at_rho(const Functional& xi, double rho);

/// Certified bound M / (rho R)^k * norm_at_rho(xi, rho) on the tail
/// sum_{|alpha| > k} |xi_alpha| M / R^|alpha|. Requires rho R > 1.
double tail_bound(const Functional& xi, int k, double rho, double radius, double cauchy_bound);

/// Direct sum of the tail, sum_{|alpha| > k} |xi_alpha| M / R^|alpha|.
double exact_tail(const Functional& xi, int k, double radius, double cauchy_bound);

/// (xi . p)(z) for a polynomial p given in absolute coordinates; the fast
/// path used by the kernel evaluations.
Complex act_on_polynomial(const Functional& xi, const Polynomial& p, std::span<const Complex> z);

}  // namespace xib
