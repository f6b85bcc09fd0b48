#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xibergman/polynomial.hpp"

namespace xib {

/// Product of discs |z_i - center_i| < radii_i.
struct Polydisc {
  std::vector<Complex> center;
  std::vector<double> radii;

  Polydisc() = default;
  Polydisc(std::vector<Complex> c, std::vector<double> r);
  static Polydisc unit(std::size_t n);
  static Polydisc centered(std::vector<double> radii);

  std::size_t arity() const { return radii.size(); }
  /// Open polydisc membership.
  bool contains(std::span<const Complex> z) const;
  bool centered_at_origin() const;
  /// Every point of other lies in this polydisc's closure.
  bool contains_polydisc(const Polydisc& other) const;
};

/// Plurisubharmonic weight psi on C^n (fiber, w_arity == 0) or C^{n+m}
/// (joint, coordinates ordered (z, w)). Only catalog entries exist, each
/// psh by construction:
///  - zero, constant a (pluriharmonic);
///  - quadratic sum c_i |x_i|^2, c_i >= 0 (convex);
///  - log-monomial 2 sum c_i log|x_i|, c_i >= 0 (log of holomorphic moduli);
///  - log-divisor 2c log|g|, c > 0, g a polynomial;
///  - modulus-squared c |h|^2, c >= 0, h a polynomial;
///  - finite sums of the above.
class WeightSpec {
 public:
  enum class Kind { Zero, Constant, Quadratic, LogMonomial, LogDivisor, ModulusSquared, Sum };

  static WeightSpec zero(std::size_t z_arity, std::size_t w_arity = 0);
  static WeightSpec constant(std::size_t z_arity, std::size_t w_arity, double a);
  /// coeffs has length n (z only) or n + m.
  static WeightSpec quadratic(std::size_t z_arity, std::size_t w_arity, std::vector<double> coeffs);
  /// coeffs has length n (z only) or n + m.
  static WeightSpec log_monomial(std::size_t z_arity, std::size_t w_arity,
                                 std::vector<double> coeffs);
  /// g has arity n + m.
  static WeightSpec log_divisor(std::size_t z_arity, Polynomial g, double c);
  static WeightSpec modulus_squared(std::size_t z_arity, Polynomial h, double c);
  static WeightSpec sum(std::vector<WeightSpec> terms);

  Kind kind() const { return kind_; }
  std::size_t z_arity() const { return n_; }
  std::size_t w_arity() const { return m_; }
  double scalar() const { return scalar_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const Polynomial& poly() const { return poly_; }
  const std::vector<WeightSpec>& terms() const { return terms_; }

  /// psi(z, w); -infinity on the polar set of log terms.
  double evaluate(std::span<const Complex> z, std::span<const Complex> w = {}) const;

  bool depends_on_w() const;
  /// psi_w = psi restricted to the fiber over w (a fiber weight).
  WeightSpec restrict_to_fiber(std::span<const Complex> w) const;
  /// psi + a.
  WeightSpec plus_constant(double a) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Zero;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  double scalar_ = 0.0;
  std::vector<double> coeffs_;
  Polynomial poly_;
  std::vector<WeightSpec> terms_;
};

/// Fiber weight split into the pieces the Gram assembly treats differently:
/// exp(-psi) = exp(-constant) * prod |z_i|^{-2 c_i} * prod |g_k|^{-2 p_k} * exp(-smooth).
struct FiberWeightParts {
  double constant = 0.0;
  std::vector<double> log_monomial;                 // length n
  std::vector<std::pair<Polynomial, double>> divisors;  // (g, c)
  std::vector<WeightSpec> smooth;                   // quadratic / modulus-squared
  bool minus_infinity = false;                      // psi == -inf on the whole fiber

  double smooth_value(std::span<const Complex> z) const;
  bool has_log_monomial() const;
};

FiberWeightParts decompose(const WeightSpec& fiber_weight);

double eval_weight(const WeightSpec& spec, std::span<const Complex> z,
                   std::span<const Complex> w = {});

/// Integral over the polydisc of |z^alpha|^2 prod |z_i|^{-2 c_i}:
/// prod_i pi R_i^{2(alpha_i - c_i + 1)} / (alpha_i - c_i + 1), or +infinity
/// when some alpha_i - c_i + 1 <= 0.
double monomial_moment(std::span<const double> radii, const MultiIndex& alpha,
                       std::span<const double> c);

/// Exact germ membership f in I(psi)_o for the supported subcatalog:
/// zero / constant, log-monomial sums, and a single log-divisor with c = 1.
/// Throws InputError for other weights (use divergence_probe instead).
bool multiplier_membership_oracle(const WeightSpec& fiber_weight, const Polynomial& f);

/// Generators of I(psi)_o for the same subcatalog. An empty list means the
/// zero ideal (psi == -infinity on the fiber).
std::vector<Polynomial> multiplier_ideal_generators(const WeightSpec& fiber_weight);

enum class ProbeVerdict { Convergent, Divergent, Inconclusive };
std::string to_string(ProbeVerdict v);

struct ProbeResult {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  double slope = 0.0;
  std::vector<double> scales;
  std::vector<double> integrals;
};

/// Numerical integrability probe near o: integrates |f|^2 exp(-psi_eps) over
/// the polydisc of radius outer_radius, where psi_eps replaces each
/// log|g|^2 by log(|g|^2 + eps^2), for each eps in the decreasing scale
/// sequence, and classifies by the slope of log J against log eps.
/// Supports radial-separable weights (constant, quadratic in z, log-monomial)
/// and a single log-divisor whose generator is affine in z_1.
ProbeResult divergence_probe(const WeightSpec& fiber_weight, const Polynomial& f,
                             std::span<const double> scales, double outer_radius = 1.0);

/// Default scale ladder 1e-1, ..., 1e-8.
std::vector<double> default_probe_scales();

}  // namespace xib
