#include "xibergman/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "xibergman/quadrature.hpp"

namespace xib {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_coeffs(const std::vector<double>& c, std::size_t n, std::size_t m, const char* what) {
  if (c.size() != n && c.size() != n + m)
    throw InputError(std::string(what) + " coefficients must have length n or n + m");
  for (double v : c)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InputError(std::string(what) + " coefficients must be finite and non-negative");
}

}  // namespace

// ---------------------------------------------------------------- Polydisc

Polydisc::Polydisc(std::vector<Complex> c, std::vector<double> r)
    : center(std::move(c)), radii(std::move(r)) {
  if (center.size() != radii.size()) throw InputError("polydisc center/radii arity mismatch");
  if (radii.empty()) throw InputError("polydisc needs arity >= 1");
  for (double v : radii)
    if (!(v > 0.0)) throw InputError("polydisc radii must be positive");
}

Polydisc Polydisc::unit(std::size_t n) {
  return Polydisc(std::vector<Complex>(n, 0.0), std::vector<double>(n, 1.0));
}

Polydisc Polydisc::centered(std::vector<double> radii) {
  std::vector<Complex> c(radii.size(), 0.0);
  return Polydisc(std::move(c), std::move(radii));
}

bool Polydisc::contains(std::span<const Complex> z) const {
  if (z.size() != arity()) throw InputError("point arity does not match polydisc");
  for (std::size_t i = 0; i < z.size(); ++i)
    if (!(std::abs(z[i] - center[i]) < radii[i])) return false;
  return true;
}

bool Polydisc::centered_at_origin() const {
  return std::all_of(center.begin(), center.end(), [](Complex c) { return c == Complex(0.0); });
}

bool Polydisc::contains_polydisc(const Polydisc& other) const {
  if (other.arity() != arity()) return false;
  for (std::size_t i = 0; i < arity(); ++i)
    if (std::abs(other.center[i] - center[i]) + other.radii[i] > radii[i] * (1 + 1e-14))
      return false;
  return true;
}

// ---------------------------------------------------------------- WeightSpec

WeightSpec WeightSpec::zero(std::size_t z_arity, std::size_t w_arity) {
  WeightSpec s;
  s.kind_ = Kind::Zero;
  s.n_ = z_arity;
  s.m_ = w_arity;
  return s;
}

WeightSpec WeightSpec::constant(std::size_t z_arity, std::size_t w_arity, double a) {
  WeightSpec s = zero(z_arity, w_arity);
  s.kind_ = Kind::Constant;
  s.scalar_ = a;
  return s;
}

WeightSpec WeightSpec::quadratic(std::size_t z_arity, std::size_t w_arity,
                                 std::vector<double> coeffs) {
  check_coeffs(coeffs, z_arity, w_arity, "quadratic");
  WeightSpec s = zero(z_arity, w_arity);
  s.kind_ = Kind::Quadratic;
  s.coeffs_ = std::move(coeffs);
  return s;
}

WeightSpec WeightSpec::log_monomial(std::size_t z_arity, std::size_t w_arity,
                                    std::vector<double> coeffs) {
  check_coeffs(coeffs, z_arity, w_arity, "log-monomial");
  WeightSpec s = zero(z_arity, w_arity);
  s.kind_ = Kind::LogMonomial;
  s.coeffs_ = std::move(coeffs);
  return s;
}

WeightSpec WeightSpec::log_divisor(std::size_t z_arity, Polynomial g, double c) {
  if (g.arity() < z_arity) throw InputError("log-divisor generator arity below z arity");
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("log-divisor needs c > 0");
  WeightSpec s = zero(z_arity, g.arity() - z_arity);
  s.kind_ = Kind::LogDivisor;
  s.scalar_ = c;
  s.poly_ = std::move(g);
  return s;
}

WeightSpec WeightSpec::modulus_squared(std::size_t z_arity, Polynomial h, double c) {
  if (h.arity() < z_arity) throw InputError("modulus-squared polynomial arity below z arity");
  if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("modulus-squared needs c >= 0");
  WeightSpec s = zero(z_arity, h.arity() - z_arity);
  s.kind_ = Kind::ModulusSquared;
  s.scalar_ = c;
  s.poly_ = std::move(h);
  return s;
}

WeightSpec WeightSpec::sum(std::vector<WeightSpec> terms) {
  if (terms.empty()) throw InputError("weight sum needs at least one term");
  WeightSpec s = zero(terms.front().n_, terms.front().m_);
  s.kind_ = Kind::Sum;
  for (auto& t : terms) {
    if (t.n_ != s.n_ || t.m_ != s.m_) throw InputError("weight sum terms have different arity");
    if (t.kind_ == Kind::Sum)
      s.terms_.insert(s.terms_.end(), t.terms_.begin(), t.terms_.end());
    else
      s.terms_.push_back(std::move(t));
  }
  return s;
}

double WeightSpec::evaluate(std::span<const Complex> z, std::span<const Complex> w) const {
  if (z.size() != n_ || w.size() != m_) throw InputError("weight evaluated at wrong arity");
  auto coord = [&](std::size_t i) { return i < n_ ? z[i] : w[i - n_]; };
  auto joint = [&] {
    std::vector<Complex> x(z.begin(), z.end());
    x.insert(x.end(), w.begin(), w.end());
    return x;
  };
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return scalar_;
    case Kind::Quadratic: {
      double s = 0.0;
      for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * std::norm(coord(i));
      return s;
    }
    case Kind::LogMonomial: {
      double s = 0.0;
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0.0) continue;
        const double a = std::abs(coord(i));
        if (a == 0.0) return -kInf;
        s += 2.0 * coeffs_[i] * std::log(a);
      }
      return s;
    }
    case Kind::LogDivisor: {
      const double a = std::abs(poly_.evaluate(joint()));
      return a == 0.0 ? -kInf : 2.0 * scalar_ * std::log(a);
    }
    case Kind::ModulusSquared:
      return scalar_ * std::norm(poly_.evaluate(joint()));
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& t : terms_) s += t.evaluate(z, w);
      return s;
    }
  }
  return 0.0;
}

bool WeightSpec::depends_on_w() const {
  if (m_ == 0) return false;
  switch (kind_) {
    case Kind::Zero:
    case Kind::Constant:
      return false;
    case Kind::Quadratic:
    case Kind::LogMonomial:
      for (std::size_t i = n_; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0.0) return true;
      return false;
    case Kind::LogDivisor:
    case Kind::ModulusSquared:
      for (const auto& [a, c] : poly_.terms())
        if (a.tail(n_).order() > 0) return true;
      return false;
    case Kind::Sum:
      return std::any_of(terms_.begin(), terms_.end(),
                         [](const WeightSpec& t) { return t.depends_on_w(); });
  }
  return false;
}

WeightSpec WeightSpec::restrict_to_fiber(std::span<const Complex> w) const {
  if (w.size() != m_) throw InputError("fiber restriction at wrong w arity");
  auto z_part = [&] { return std::vector<double>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(n_)); };
  switch (kind_) {
    case Kind::Zero:
      return zero(n_);
    case Kind::Constant:
      return constant(n_, 0, scalar_);
    case Kind::Quadratic: {
      if (coeffs_.size() == n_) return quadratic(n_, 0, coeffs_);
      double a = 0.0;
      for (std::size_t j = 0; j < m_; ++j) a += coeffs_[n_ + j] * std::norm(w[j]);
      return sum({quadratic(n_, 0, z_part()), constant(n_, 0, a)});
    }
    case Kind::LogMonomial: {
      if (coeffs_.size() == n_) return log_monomial(n_, 0, coeffs_);
      double a = 0.0;
      for (std::size_t j = 0; j < m_; ++j) {
        if (coeffs_[n_ + j] == 0.0) continue;
        const double r = std::abs(w[j]);
        a += r == 0.0 ? -kInf : 2.0 * coeffs_[n_ + j] * std::log(r);
      }
      return sum({log_monomial(n_, 0, z_part()), constant(n_, 0, a)});
    }
    case Kind::LogDivisor:
      return log_divisor(n_, poly_.restrict_trailing(n_, w), scalar_);
    case Kind::ModulusSquared:
      return modulus_squared(n_, poly_.restrict_trailing(n_, w), scalar_);
    case Kind::Sum: {
      std::vector<WeightSpec> t;
      for (const auto& s : terms_) t.push_back(s.restrict_to_fiber(w));
      return sum(std::move(t));
    }
  }
  return zero(n_);
}

WeightSpec WeightSpec::plus_constant(double a) const {
  return sum({*this, constant(n_, m_, a)});
}

std::string WeightSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Zero: os << "zero"; break;
    case Kind::Constant: os << "constant(" << scalar_ << ")"; break;
    case Kind::Quadratic: os << "quadratic"; break;
    case Kind::LogMonomial: os << "logMonomial"; break;
    case Kind::LogDivisor: os << "logDivisor(c=" << scalar_ << ")"; break;
    case Kind::ModulusSquared: os << "modulusSquared(c=" << scalar_ << ")"; break;
    case Kind::Sum:
      os << "sum[";
      for (std::size_t i = 0; i < terms_.size(); ++i) os << (i ? "," : "") << terms_[i].describe();
      os << "]";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- parts

double FiberWeightParts::smooth_value(std::span<const Complex> z) const {
  double s = 0.0;
  for (const auto& t : smooth) s += t.evaluate(z);
  return s;
}

bool FiberWeightParts::has_log_monomial() const {
  return std::any_of(log_monomial.begin(), log_monomial.end(), [](double c) { return c != 0.0; });
}

namespace {

void decompose_into(const WeightSpec& s, FiberWeightParts& parts) {
  using K = WeightSpec::Kind;
  switch (s.kind()) {
    case K::Zero:
      break;
    case K::Constant:
      if (s.scalar() == -kInf) parts.minus_infinity = true;
      else parts.constant += s.scalar();
      break;
    case K::Quadratic:
      parts.smooth.push_back(s);
      break;
    case K::LogMonomial:
      for (std::size_t i = 0; i < s.z_arity(); ++i) parts.log_monomial[i] += s.coeffs()[i];
      break;
    case K::LogDivisor: {
      const Polynomial& g = s.poly();
      if (g.is_zero()) {
        parts.minus_infinity = true;
      } else if (g.degree() == 0) {
        parts.constant += 2.0 * s.scalar() * std::log(std::abs(g.coeff(MultiIndex(g.arity()))));
      } else {
        parts.divisors.emplace_back(g, s.scalar());
      }
      break;
    }
    case K::ModulusSquared:
      if (s.poly().degree() <= 0)
        parts.constant += s.scalar() * std::norm(s.poly().coeff(MultiIndex(s.poly().arity())));
      else
        parts.smooth.push_back(s);
      break;
    case K::Sum:
      for (const auto& t : s.terms()) decompose_into(t, parts);
      break;
  }
}

}  // namespace

FiberWeightParts decompose(const WeightSpec& fiber_weight) {
  if (fiber_weight.w_arity() != 0) throw InputError("decompose expects a fiber weight");
  FiberWeightParts parts;
  parts.log_monomial.assign(fiber_weight.z_arity(), 0.0);
  decompose_into(fiber_weight, parts);
  return parts;
}

double eval_weight(const WeightSpec& spec, std::span<const Complex> z,
                   std::span<const Complex> w) {
  return spec.evaluate(z, w);
}

double monomial_moment(std::span<const double> radii, const MultiIndex& alpha,
                       std::span<const double> c) {
  if (radii.size() != alpha.arity() || c.size() != alpha.arity())
    throw InputError("moment arity mismatch");
  double m = 1.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !(c[i] >= 0.0)) throw InputError("moment needs R > 0, c >= 0");
    const double e = alpha[i] - c[i] + 1.0;
    if (!(e > 0.0)) return kInf;
    m *= std::numbers::pi * std::pow(radii[i], 2.0 * e) / e;
  }
  return m;
}

// ---------------------------------------------------------------- oracles

namespace {

struct OracleForm {
  bool zero_ideal = false;
  std::vector<double> log_monomial;
  const Polynomial* divisor = nullptr;
};

OracleForm oracle_form(const WeightSpec& fiber_weight, const FiberWeightParts& parts) {
  OracleForm form;
  form.zero_ideal = parts.minus_infinity;
  form.log_monomial = parts.log_monomial;
  if (parts.divisors.empty()) return form;
  if (parts.divisors.size() == 1 && parts.divisors.front().second == 1.0 &&
      !parts.has_log_monomial()) {
    form.divisor = &parts.divisors.front().first;
    return form;
  }
  throw InputError("multiplier oracle does not support weight " + fiber_weight.describe() +
                   "; use the divergence probe");
}

MultiIndex monomial_generator(const std::vector<double>& c) {
  std::vector<int> g(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) g[i] = static_cast<int>(std::floor(c[i] + 1e-12));
  return MultiIndex(std::move(g));
}

}  // namespace

bool multiplier_membership_oracle(const WeightSpec& fiber_weight, const Polynomial& f) {
  const auto parts = decompose(fiber_weight);
  const auto form = oracle_form(fiber_weight, parts);
  if (f.arity() != fiber_weight.z_arity()) throw InputError("oracle polynomial arity mismatch");
  const Polynomial fz = f.pruned(1e-14 * std::max(1.0, f.max_abs_coeff()));
  if (fz.empty()) return true;
  if (form.zero_ideal) return false;
  if (form.divisor) {
    const Polynomial& g = *form.divisor;
    if (std::abs(g.coeff(MultiIndex(g.arity()))) > 1e-14) return true;  // unit at o
    return division_remainder(fz, g).is_zero(1e-10 * std::max(1.0, fz.max_abs_coeff()));
  }
  // |z^alpha|^2 prod |z_i|^{-2c_i} is integrable near o iff alpha_i > c_i - 1.
  const MultiIndex gen = monomial_generator(form.log_monomial);
  for (const auto& [alpha, c] : fz.terms())
    if (!alpha.dominates(gen)) return false;
  return true;
}

std::vector<Polynomial> multiplier_ideal_generators(const WeightSpec& fiber_weight) {
  const auto parts = decompose(fiber_weight);
  const auto form = oracle_form(fiber_weight, parts);
  const std::size_t n = fiber_weight.z_arity();
  if (form.zero_ideal) return {};
  if (form.divisor) {
    const Polynomial& g = *form.divisor;
    if (std::abs(g.coeff(MultiIndex(n))) > 1e-14) return {Polynomial::constant(n, 1.0)};
    return {g};
  }
  return {Polynomial::monomial(monomial_generator(form.log_monomial))};
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Convergent: return "CONVERGENT";
    case ProbeVerdict::Divergent: return "DIVERGENT";
    case ProbeVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::vector<double> default_probe_scales() {
  std::vector<double> s;
  for (int k = 1; k <= 8; ++k) s.push_back(std::pow(10.0, -k));
  return s;
}

namespace {

// 2 pi int_0^R r^{2a+1} exp(-q r^2) (r^2 + eps^2)^{-c} dr
double radial_regularized(int a, double q, double c, double eps, double radius) {
  const auto rule = graded_gauss_legendre(radius, eps * 1e-3, 2.0, 10);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double r = rule.nodes[k];
    s += rule.weights[k] * std::pow(r, 2 * a + 1) * std::exp(-q * r * r) *
         std::pow(r * r + eps * eps, -c);
  }
  return 2.0 * std::numbers::pi * s;
}

double probe_separable(const FiberWeightParts& parts, const Polynomial& f, double eps,
                       double radius) {
  const std::size_t n = f.arity();
  std::vector<double> q(n, 0.0);
  for (const auto& s : parts.smooth) {
    if (s.kind() != WeightSpec::Kind::Quadratic)
      throw InputError("divergence probe: non-radial smooth weight term");
    for (std::size_t i = 0; i < n; ++i) q[i] += s.coeffs()[i];
  }
  double total = 0.0;
  for (const auto& [alpha, c] : f.terms()) {
    double term = std::norm(c);
    for (std::size_t i = 0; i < n; ++i)
      term *= radial_regularized(alpha[i], q[i], parts.log_monomial[i], eps, radius);
    total += term;
  }
  return total * std::exp(-parts.constant);
}

double probe_affine_divisor(const FiberWeightParts& parts, const Polynomial& f, double eps,
                            double radius) {
  const std::size_t n = f.arity();
  const Polynomial& g = parts.divisors.front().first;
  const double c = parts.divisors.front().second;
  // g = a z_1 + b(z'), a constant.
  const Complex a = g.coeff(MultiIndex::unit(n, 0));
  Polynomial b(n);
  for (const auto& [alpha, coef] : g.terms()) {
    if (alpha[0] == 0) b.add_term(alpha, coef);
    else if (!(alpha == MultiIndex::unit(n, 0)))
      throw InputError("divergence probe: divisor must be affine in z_1");
  }
  if (std::abs(a) == 0.0) throw InputError("divergence probe: divisor must involve z_1");

  // Outer tensor rule over z' = (z_2, ..., z_n).
  std::vector<std::vector<Complex>> outer_pts{{}};
  std::vector<double> outer_w{1.0};
  for (std::size_t i = 1; i < n; ++i) {
    const auto rule = disc_rule(0.0, radius, 12, 16);
    std::vector<std::vector<Complex>> np;
    std::vector<double> nw;
    for (std::size_t k = 0; k < outer_pts.size(); ++k)
      for (std::size_t j = 0; j < rule.points.size(); ++j) {
        auto p = outer_pts[k];
        p.push_back(rule.points[j]);
        np.push_back(std::move(p));
        nw.push_back(outer_w[k] * rule.weights[j]);
      }
    outer_pts = std::move(np);
    outer_w = std::move(nw);
  }

  const int n_theta = 32;
  const double dtheta = 2.0 * std::numbers::pi / n_theta;
  const double h0 = eps / std::abs(a) * 1e-3;
  std::vector<Complex> z(n);
  double total = 0.0;
  for (std::size_t k = 0; k < outer_pts.size(); ++k) {
    for (std::size_t i = 1; i < n; ++i) z[i] = outer_pts[k][i - 1];
    z[0] = 0.0;
    const Complex root = -b.evaluate(z) / a;
    double inner = 0.0;
    const bool inside = std::abs(root) < radius;
    const Complex origin = inside ? root : Complex(0.0);
    for (int t = 0; t < n_theta; ++t) {
      const Complex dir = std::polar(1.0, t * dtheta);
      double rho_max = radius;
      if (inside) {
        const double proj = std::real(std::conj(root) * dir);
        rho_max = -proj + std::sqrt(proj * proj - std::norm(root) + radius * radius);
      }
      const auto rule = inside ? graded_gauss_legendre(rho_max, h0, 3.0, 6)
                               : gauss_legendre(24, 0.0, rho_max);
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double rho = rule.nodes[j];
        z[0] = origin + rho * dir;
        const double gz = std::norm(g.evaluate(z));
        inner += rule.weights[j] * rho * dtheta * std::norm(f.evaluate(z)) *
                 std::pow(gz + eps * eps, -c) * std::exp(-parts.smooth_value(z));
      }
    }
    total += outer_w[k] * inner;
  }
  return total * std::exp(-parts.constant);
}

}  // namespace

ProbeResult divergence_probe(const WeightSpec& fiber_weight, const Polynomial& f,
                             std::span<const double> scales, double outer_radius) {
  if (scales.size() < 4) throw InputError("divergence probe needs at least 4 levels");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw InputError("probe scales must be positive");
    if (i && !(scales[i] < scales[i - 1])) throw InputError("probe scales must decrease");
  }
  if (f.arity() != fiber_weight.z_arity()) throw InputError("probe polynomial arity mismatch");
  const auto parts = decompose(fiber_weight);
  if (parts.minus_infinity) throw InputError("divergence probe: weight is -infinity on the fiber");

  ProbeResult res;
  res.scales.assign(scales.begin(), scales.end());
  if (f.is_zero()) {
    res.verdict = ProbeVerdict::Convergent;
    res.integrals.assign(scales.size(), 0.0);
    return res;
  }
  const bool divisor_route = !parts.divisors.empty();
  if (divisor_route && (parts.divisors.size() != 1 || parts.has_log_monomial()))
    throw InputError("divergence probe supports a single divisor without log-monomial terms");
  for (double eps : scales)
    res.integrals.push_back(divisor_route ? probe_affine_divisor(parts, f, eps, outer_radius)
                                          : probe_separable(parts, f, eps, outer_radius));

  // Least-squares slope of log J against log eps.
  const std::size_t k = scales.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double x = std::log(scales[i]), y = std::log(res.integrals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  res.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double last = res.integrals[k - 1], prev = res.integrals[k - 2];
  const bool cauchy = std::abs(last - prev) <= 1e-3 * std::abs(last);
  if (res.slope <= -0.1) res.verdict = ProbeVerdict::Divergent;
  else if (std::abs(res.slope) < 0.02 && cauchy) res.verdict = ProbeVerdict::Convergent;
  else res.verdict = ProbeVerdict::Inconclusive;
  return res;
}

}  // namespace xib
