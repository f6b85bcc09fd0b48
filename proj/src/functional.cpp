#include "xibergman/functional.hpp"

#include <cmath>

namespace xib {

Functional Functional::dirac(std::size_t arity) {
  Functional f(arity);
  f.set(MultiIndex(arity), 1.0);
  return f;
}

Functional Functional::derivative(const MultiIndex& alpha, Complex scale) {
  Functional f(alpha.arity());
  f.set(alpha, scale);
  return f;
}

std::optional<int> Functional::degree() const {
  const int d = coeffs_.degree();
  if (d < 0) return std::nullopt;
  return d;
}

TaylorData TaylorData::of_polynomial(const Polynomial& p, std::span<const Complex> center) {
  TaylorData t;
  t.center.assign(center.begin(), center.end());
  t.coeffs = p.shifted(center);
  return t;
}

Complex apply(const Functional& xi, const TaylorData& taylor) {
  if (xi.arity() != taylor.coeffs.arity() || taylor.center.size() != xi.arity())
    throw InputError("functional and Taylor data have different arity");
  if (taylor.truncation_degree) {
    const auto d = xi.degree();
    if (d && *d > *taylor.truncation_degree)
      throw InputError("Taylor data truncated below the functional's degree");
  }
  Complex s = 0.0;
  for (const auto& [alpha, c] : xi.terms()) s += c * taylor.coeffs.coeff(alpha);
  return s;
}

TaylorData recenter(const TaylorData& poly, std::span<const Complex> new_center) {
  if (poly.truncation_degree) throw InputError("recentering needs exact polynomial data");
  if (new_center.size() != poly.center.size()) throw InputError("recentering arity mismatch");
  std::vector<Complex> delta(new_center.size());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = new_center[i] - poly.center[i];
  TaylorData out;
  out.center.assign(new_center.begin(), new_center.end());
  out.coeffs = poly.coeffs.shifted(delta);
  return out;
}

double norm_at_rho(const Functional& xi, double rho) {
  if (!(rho > 0.0)) throw InputError("rho must be positive");
  double s = 0.0;
  for (const auto& [alpha, c] : xi.terms()) s += std::abs(c) * std::pow(rho, alpha.order());
  return s;
}

double tail_bound(const Functional& xi, int k, double rho, double radius, double cauchy_bound) {
  if (k < 0 || !(radius > 0.0) || !(cauchy_bound > 0.0))
    throw InputError("tail bound needs k >= 0, R > 0, M > 0");
  if (!(rho * radius > 1.0)) throw InputError("tail bound requires rho * R > 1");
  return cauchy_bound / std::pow(rho * radius, k) * norm_at_rho(xi, rho);
}

double exact_tail(const Functional& xi, int k, double radius, double cauchy_bound) {
  double s = 0.0;
  for (const auto& [alpha, c] : xi.terms())
    if (alpha.order() > k) s += std::abs(c) * cauchy_bound / std::pow(radius, alpha.order());
  return s;
}

Complex act_on_polynomial(const Functional& xi, const Polynomial& p, std::span<const Complex> z) {
  if (xi.arity() != p.arity() || z.size() != p.arity())
    throw InputError("functional and polynomial have different arity");
  Complex s = 0.0;
  for (const auto& [alpha, c] : xi.terms()) s += c * p.taylor_coefficient(z, alpha);
  return s;
}

}  // namespace xib
