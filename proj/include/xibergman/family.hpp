#pragma once

#include <map>
#include <span>
#include <vector>

#include "xibergman/functional.hpp"

namespace xib {

/// Holomorphic functional-valued map w -> xi(w) whose coefficients
/// xi_alpha(w) are polynomials in w.
class FunctionalFamily {
 public:
  using Terms = std::map<MultiIndex, Polynomial, GradedLexLess>;

  FunctionalFamily() = default;
  FunctionalFamily(std::size_t z_arity, std::size_t w_arity) : n_(z_arity), m_(w_arity) {}
  FunctionalFamily(std::size_t z_arity, std::size_t w_arity, Terms terms);

  /// Family constant in w.
  static FunctionalFamily constant(const Functional& xi, std::size_t w_arity);

  std::size_t z_arity() const { return n_; }
  std::size_t w_arity() const { return m_; }
  const Terms& terms() const { return terms_; }
  void set(const MultiIndex& alpha, Polynomial coeff);
  /// Max |alpha| in the support, -1 if empty.
  int z_degree() const;

  FunctionalFamily operator+(const FunctionalFamily& o) const;
  FunctionalFamily operator*(Complex s) const;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  Terms terms_;
};

Functional eval_family(const FunctionalFamily& fam, std::span<const Complex> w);

/// For each rho: sup over the grid of norm_at_rho(xi(w), rho).
std::vector<double> lub_check(const FunctionalFamily& fam,
                              std::span<const std::vector<Complex>> grid,
                              std::span<const double> rhos);

/// Evaluator with eval_family semantics; the anti-holomorphic control
/// evaluates the family at conj(w).
class FamilyEvaluator {
 public:
  FamilyEvaluator() = default;
  explicit FamilyEvaluator(FunctionalFamily fam, bool conjugate_argument = false)
      : fam_(std::move(fam)), conjugate_(conjugate_argument) {}

  Functional operator()(std::span<const Complex> w) const;
  bool holomorphic() const { return !conjugate_; }
  const FunctionalFamily& family() const { return fam_; }
  std::size_t z_arity() const { return fam_.z_arity(); }
  std::size_t w_arity() const { return fam_.w_arity(); }

 private:
  FunctionalFamily fam_;
  bool conjugate_ = false;
};

/// Negative control breaking holomorphy: w -> xi(conj(w)).
FamilyEvaluator anti_holomorphic_control(const FunctionalFamily& fam);

}  // namespace xib
