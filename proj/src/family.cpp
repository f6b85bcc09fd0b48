#include "xibergman/family.hpp"

#include <algorithm>

namespace xib {

FunctionalFamily::FunctionalFamily(std::size_t z_arity, std::size_t w_arity, Terms terms)
    : n_(z_arity), m_(w_arity) {
  for (auto& [alpha, p] : terms) set(alpha, std::move(p));
}

FunctionalFamily FunctionalFamily::constant(const Functional& xi, std::size_t w_arity) {
  FunctionalFamily f(xi.arity(), w_arity);
  for (const auto& [alpha, c] : xi.terms()) f.set(alpha, Polynomial::constant(w_arity, c));
  return f;
}

void FunctionalFamily::set(const MultiIndex& alpha, Polynomial coeff) {
  if (alpha.arity() != n_) throw InputError("family multi-index arity mismatch");
  if (coeff.arity() != m_) throw InputError("family coefficient w-arity mismatch");
  if (coeff.empty()) terms_.erase(alpha);
  else terms_[alpha] = std::move(coeff);
}

int FunctionalFamily::z_degree() const {
  int d = -1;
  for (const auto& [alpha, p] : terms_) d = std::max(d, alpha.order());
  return d;
}

FunctionalFamily FunctionalFamily::operator+(const FunctionalFamily& o) const {
  if (o.n_ != n_ || o.m_ != m_) throw InputError("family arity mismatch");
  FunctionalFamily r(*this);
  for (const auto& [alpha, p] : o.terms_) {
    auto it = r.terms_.find(alpha);
    r.set(alpha, it == r.terms_.end() ? p : it->second + p);
  }
  return r;
}

FunctionalFamily FunctionalFamily::operator*(Complex s) const {
  FunctionalFamily r(n_, m_);
  for (const auto& [alpha, p] : terms_) r.set(alpha, p * s);
  return r;
}

Functional eval_family(const FunctionalFamily& fam, std::span<const Complex> w) {
  if (w.size() != fam.w_arity()) throw InputError("family evaluated at a point of wrong arity");
  Functional xi(fam.z_arity());
  for (const auto& [alpha, p] : fam.terms()) xi.set(alpha, p.evaluate(w));
  return xi;
}

std::vector<double> lub_check(const FunctionalFamily& fam,
                              std::span<const std::vector<Complex>> grid,
                              std::span<const double> rhos) {
  if (grid.empty()) throw InputError("lub_check needs a nonempty grid");
  std::vector<double> sup(rhos.size(), 0.0);
  for (const auto& w : grid) {
    const Functional xi = eval_family(fam, w);
    for (std::size_t k = 0; k < rhos.size(); ++k)
      sup[k] = std::max(sup[k], norm_at_rho(xi, rhos[k]));
  }
  return sup;
}

Functional FamilyEvaluator::operator()(std::span<const Complex> w) const {
  if (!conjugate_) return eval_family(fam_, w);
  std::vector<Complex> wc(w.begin(), w.end());
  for (auto& x : wc) x = std::conj(x);
  return eval_family(fam_, wc);
}

FamilyEvaluator anti_holomorphic_control(const FunctionalFamily& fam) {
  return FamilyEvaluator(fam, true);
}

}  // namespace xib
