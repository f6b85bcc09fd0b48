#pragma once

#include <map>
#include <span>
#include <vector>

#include "xibergman/multi_index.hpp"

namespace xib {

/// Sparse multivariate polynomial with complex coefficients, keyed by
/// multi-index in graded-lex order. Used both for polynomials in z and for
/// the w-dependent entries of functional families and jet matrices.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Complex, GradedLexLess>;

  Polynomial() = default;
  explicit Polynomial(std::size_t arity) : arity_(arity) {}
  Polynomial(std::size_t arity, Terms terms);

  static Polynomial constant(std::size_t arity, Complex c);
  static Polynomial variable(std::size_t arity, std::size_t i);
  static Polynomial monomial(const MultiIndex& alpha, Complex c = 1.0);

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of z^alpha (zero when absent).
  Complex coeff(const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, Complex c);
  void add_term(const MultiIndex& alpha, Complex c);

  /// Max |alpha| over the support, -1 for the zero polynomial.
  int degree() const;
  double max_abs_coeff() const;

  /// True when every coefficient magnitude is <= abs_tol.
  bool is_zero(double abs_tol = 0.0) const;
  Polynomial pruned(double abs_tol) const;

  Complex evaluate(std::span<const Complex> x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;
  Polynomial operator-() const { return *this * Complex(-1.0); }
  Polynomial& operator+=(const Polynomial& o);

  /// Coefficients conjugated; evaluating at conj(x) gives conj(p(x)) for
  /// the original.
  Polynomial conjugated_coeffs() const;

  /// Terms with |alpha| < degree (reduction modulo m^degree).
  Polynomial truncated_below(int degree) const;

  /// q(u) = p(center + u).
  Polynomial shifted(std::span<const Complex> center) const;

  /// Taylor coefficient of order alpha at the given point,
  /// p^(alpha)(x)/alpha!.
  Complex taylor_coefficient(std::span<const Complex> x, const MultiIndex& alpha) const;

  /// Substitutes the trailing arity()-n variables by w; result has arity n.
  Polynomial restrict_trailing(std::size_t n, std::span<const Complex> w) const;

  /// Splits a polynomial in (z, w) with z of arity n into z-monomial -> w-polynomial.
  std::map<MultiIndex, Polynomial, GradedLexLess> split_leading(std::size_t n) const;

  /// Embeds into a larger variable space; this polynomial's variables become
  /// positions offset..offset+arity()-1.
  Polynomial embedded(std::size_t new_arity, std::size_t offset) const;

 private:
  void check_same_arity(const Polynomial& o) const;

  std::size_t arity_ = 0;
  Terms terms_;
};

/// Exact division remainder of f by g under graded-lex leading terms.
/// A single divisor is a Groebner basis of (g), so the remainder vanishes
/// iff g divides f. Coefficients below rel_tol relative to f's scale are
/// treated as zero.
Polynomial division_remainder(const Polynomial& f, const Polynomial& g, double rel_tol = 1e-10);

/// Coefficientwise identity test with the normalization used across the
/// library: |a_alpha - b_alpha| <= tol * max(1, max coefficient magnitude).
bool polynomials_equal(const Polynomial& a, const Polynomial& b, double tol = 1e-10);

}  // namespace xib
