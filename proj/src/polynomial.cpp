#include "xibergman/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace xib {

namespace {

Complex int_power(Complex x, int k) {
  Complex r = 1.0;
  Complex b = x;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

}  // namespace

Polynomial::Polynomial(std::size_t arity, Terms terms) : arity_(arity), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.arity() != arity_) throw InputError("polynomial term arity mismatch");
    if (it->second == Complex(0.0)) it = terms_.erase(it);
    else ++it;
  }
}

Polynomial Polynomial::constant(std::size_t arity, Complex c) {
  Polynomial p(arity);
  p.set(MultiIndex(arity), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t i) {
  Polynomial p(arity);
  p.set(MultiIndex::unit(arity, i), 1.0);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, Complex c) {
  Polynomial p(alpha.arity());
  p.set(alpha, c);
  return p;
}

Complex Polynomial::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void Polynomial::set(const MultiIndex& alpha, Complex c) {
  if (alpha.arity() != arity_) throw InputError("polynomial term arity mismatch");
  if (c == Complex(0.0)) terms_.erase(alpha);
  else terms_[alpha] = c;
}

void Polynomial::add_term(const MultiIndex& alpha, Complex c) {
  if (alpha.arity() != arity_) throw InputError("polynomial term arity mismatch");
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, a.order());
  return d;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [a, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool Polynomial::is_zero(double abs_tol) const {
  for (const auto& [a, c] : terms_)
    if (std::abs(c) > abs_tol) return false;
  return true;
}

Polynomial Polynomial::pruned(double abs_tol) const {
  Polynomial r(arity_);
  for (const auto& [a, c] : terms_)
    if (std::abs(c) > abs_tol) r.terms_.emplace(a, c);
  return r;
}

Complex Polynomial::evaluate(std::span<const Complex> x) const {
  if (x.size() != arity_) throw InputError("polynomial evaluation arity mismatch");
  Complex s = 0.0;
  for (const auto& [a, c] : terms_) {
    Complex t = c;
    for (std::size_t i = 0; i < arity_; ++i)
      if (a[i]) t *= int_power(x[i], a[i]);
    s += t;
  }
  return s;
}

void Polynomial::check_same_arity(const Polynomial& o) const {
  if (o.arity_ != arity_) throw InputError("polynomial arity mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(*this);
  r += o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_arity(o);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_arity(o);
  Polynomial r(arity_);
  for (const auto& [a, c] : terms_)
    for (const auto& [b, d] : o.terms_) r.add_term(a + b, c * d);
  return r;
}

Polynomial Polynomial::operator*(Complex s) const {
  Polynomial r(arity_);
  if (s == Complex(0.0)) return r;
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, c * s);
  return r;
}

Polynomial Polynomial::conjugated_coeffs() const {
  Polynomial r(arity_);
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, std::conj(c));
  return r;
}

Polynomial Polynomial::truncated_below(int degree) const {
  Polynomial r(arity_);
  for (const auto& [a, c] : terms_)
    if (a.order() < degree) r.terms_.emplace(a, c);
  return r;
}

Polynomial Polynomial::shifted(std::span<const Complex> center) const {
  if (center.size() != arity_) throw InputError("recentering arity mismatch");
  Polynomial r(arity_);
  for (const auto& [a, c] : terms_) {
    // prod_i (c_i + u_i)^{a_i} = sum_{b <= a} prod_i C(a_i,b_i) c_i^{a_i-b_i} u^b
    for (const auto& b : indices_up_to(arity_, a.order())) {
      if (!a.dominates(b)) continue;
      Complex t = c;
      for (std::size_t i = 0; i < arity_; ++i)
        t *= binomial(a[i], b[i]) * int_power(center[i], a[i] - b[i]);
      r.add_term(b, t);
    }
  }
  return r;
}

Complex Polynomial::taylor_coefficient(std::span<const Complex> x, const MultiIndex& alpha) const {
  if (x.size() != arity_ || alpha.arity() != arity_)
    throw InputError("Taylor coefficient arity mismatch");
  Complex s = 0.0;
  for (const auto& [b, c] : terms_) {
    if (!b.dominates(alpha)) continue;
    Complex t = c;
    for (std::size_t i = 0; i < arity_; ++i)
      t *= binomial(b[i], alpha[i]) * int_power(x[i], b[i] - alpha[i]);
    s += t;
  }
  return s;
}

Polynomial Polynomial::restrict_trailing(std::size_t n, std::span<const Complex> w) const {
  if (n > arity_ || w.size() != arity_ - n)
    throw InputError("fiber restriction arity mismatch");
  Polynomial r(n);
  for (const auto& [a, c] : terms_) {
    Complex t = c;
    for (std::size_t j = 0; j < w.size(); ++j) t *= int_power(w[j], a[n + j]);
    r.add_term(a.head(n), t);
  }
  return r;
}

std::map<MultiIndex, Polynomial, GradedLexLess> Polynomial::split_leading(std::size_t n) const {
  if (n > arity_) throw InputError("split arity exceeds polynomial arity");
  std::map<MultiIndex, Polynomial, GradedLexLess> out;
  for (const auto& [a, c] : terms_) {
    auto [it, ins] = out.try_emplace(a.head(n), Polynomial(arity_ - n));
    it->second.add_term(a.tail(n), c);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.empty()) it = out.erase(it);
    else ++it;
  }
  return out;
}

Polynomial Polynomial::embedded(std::size_t new_arity, std::size_t offset) const {
  if (offset + arity_ > new_arity) throw InputError("embedding does not fit");
  Polynomial r(new_arity);
  for (const auto& [a, c] : terms_) {
    std::vector<int> e(new_arity, 0);
    for (std::size_t i = 0; i < arity_; ++i) e[offset + i] = a[i];
    r.terms_.emplace(MultiIndex(std::move(e)), c);
  }
  return r;
}

Polynomial division_remainder(const Polynomial& f, const Polynomial& g, double rel_tol) {
  if (f.arity() != g.arity()) throw InputError("division arity mismatch");
  if (g.is_zero()) throw InputError("division by the zero polynomial");
  const double tol = rel_tol * std::max(1.0, f.max_abs_coeff());
  // Leading term: graded-lex largest.
  const auto lead = std::prev(g.terms().end());
  const MultiIndex& lt = lead->first;
  const Complex lc = lead->second;

  Polynomial p = f.pruned(tol);
  Polynomial rem(f.arity());
  while (!p.empty()) {
    const auto top = std::prev(p.terms().end());
    const MultiIndex a = top->first;
    const Complex c = top->second;
    if (a.dominates(lt)) {
      p = (p - g * Polynomial::monomial(a - lt, c / lc)).pruned(tol);
      p.set(a, 0.0);
    } else {
      rem.add_term(a, c);
      p.set(a, 0.0);
    }
  }
  return rem;
}

bool polynomials_equal(const Polynomial& a, const Polynomial& b, double tol) {
  const double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
  return (a - b).is_zero(tol * scale);
}

}  // namespace xib
