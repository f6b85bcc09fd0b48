#include <doctest.h>

#include "helpers.hpp"
#include "xibergman/extension.hpp"

using namespace xib;
using namespace xib::test;

namespace {

ExtensionProblem problem(WeightSpec weight, int dz, int dw, double r = 1.0, Complex w0 = 0.0) {
  ExtensionProblem p;
  p.fiber = Polydisc::unit(1);
  p.weight = std::move(weight);
  p.z_degree = dz;
  p.w_degree = dw;
  p.r = r;
  p.w0 = w0;
  return p;
}

WeightSpec gaussian() { return WeightSpec::quadratic(1, 1, {1.0, 1.0}); }

double coefficient_error(const ExtensionProblem& prob, const ExtensionResult& ext, const Polynomial& f) {
  std::vector<Complex> w0 = {prob.w0};
  auto restricted = ext.extension.restrict_trailing(prob.fiber.arity(), w0);
  double err = 0.0;
  for (const auto& a : indices_up_to(prob.fiber.arity(), prob.z_degree + 2))
    err = std::max(err, std::abs(restricted.coeff(a) - f.coeff(a)));
  return err;
}

}  // namespace

TEST_SUITE("extension") {
  TEST_CASE("w-independent weights extend constantly with ratio one") {
    std::mt19937_64 rng(81);
    for (const auto& weight : {WeightSpec::zero(1, 1), WeightSpec::quadratic(1, 1, {1.0, 0.0}),
                               WeightSpec::log_monomial(1, 1, {0.5, 0.0})}) {
      auto prob = problem(weight, 5, 4, 0.8);
      auto f = random_polynomial(rng, 1, 5);
      auto ext = minimal_extension(prob, f);
      CHECK(ext.model.separable);
      const auto pruned = ext.extension.pruned(1e-10);
      for (const auto& [a, c] : pruned.terms()) CHECK(a[1] == 0);
      CHECK(optimal_constant_check(prob, ext) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(coefficient_error(prob, ext, f) <= 1e-12 * std::max(1.0, f.max_abs_coeff()));
      CHECK(ext.kkt_residual < 1e-9);
    }
  }

  TEST_CASE("zero datum") {
    auto prob = problem(gaussian(), 4, 4);
    auto ext = minimal_extension(prob, Polynomial(1));
    CHECK(ext.extension.is_zero(1e-14));
    CHECK(ext.joint_norm == 0.0);
    CHECK_THROWS_AS(optimal_constant_check(prob, ext), InputError);
  }

  TEST_CASE("gaussian weight beats the constant extension") {
    auto prob = problem(gaussian(), 10, 10);
    Polynomial f = Polynomial::variable(1, 0);
    auto ext = minimal_extension(prob, f);
    Eigen::VectorXcd constant = Eigen::VectorXcd::Zero(ext.model.basis.size());
    for (std::size_t j = 0; j < ext.model.labels.size(); ++j)
      if (ext.model.labels[j] == MultiIndex{1, 0}) constant(static_cast<Eigen::Index>(j)) = 1.0;
    double constant_norm = (constant.adjoint() * ext.model.gram * constant)(0, 0).real();
    CHECK(ext.joint_norm <= constant_norm * (1 + 1e-12));
    double ratio = optimal_constant_check(prob, ext);
    CHECK(ratio < 1.0);
    CHECK(ratio <= 1 + 5e-3);
    CHECK(coefficient_error(prob, ext, f) <= 1e-12);
  }

  TEST_CASE("shrinking the base disc") {
    Polynomial f = Polynomial::variable(1, 0) + Polynomial::constant(1, 0.5);
    double previous = 0.0;
    for (double r : {1.0, 0.5, 0.25}) {
      auto prob = problem(gaussian(), 6, 6, r);
      double ratio = optimal_constant_check(prob, minimal_extension(prob, f));
      CHECK(ratio <= 1 + 5e-3);
      CHECK(ratio >= previous);
      previous = ratio;
    }
  }

  TEST_CASE("minimizer is stationary along the constraint null space") {
    std::mt19937_64 rng(82);
    Polynomial g = Polynomial::variable(2, 0) - Polynomial::variable(2, 1) * 0.5;
    std::vector<ExtensionProblem> probs = {
        problem(gaussian(), 6, 6),
        problem(WeightSpec::modulus_squared(1, g, 1.0), 4, 4, 0.5, Complex(0.1, 0.2))};
    for (const auto& prob : probs) {
      auto f = random_polynomial(rng, 1, 3);
      auto ext = minimal_extension(prob, f);
      CHECK(coefficient_error(prob, ext, f) <= 1e-12 * std::max(1.0, f.max_abs_coeff()));
      const auto& g_joint = ext.model.gram;
      for (int trial = 0; trial < 20; ++trial) {
        // basis elements carrying a positive power of (w - w0) vanish on the central fiber
        Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(ext.coeffs.size());
        for (std::size_t j = 0; j < ext.model.labels.size(); ++j)
          if (ext.model.labels[j][1] > 0) delta(static_cast<Eigen::Index>(j)) = random_complex(rng);
        for (double t : {1e-3, 1e-1, 1.0}) {
          Eigen::VectorXcd c = ext.coeffs + t * delta;
          double norm = (c.adjoint() * g_joint * c)(0, 0).real();
          CHECK(norm >= ext.joint_norm * (1 - 1e-10));
        }
      }
    }
  }

  TEST_CASE("rejects bad input") {
    auto prob = problem(gaussian(), 3, 3);
    CHECK_THROWS_AS(minimal_extension(prob, Polynomial::monomial(MultiIndex{5})), InputError);
    CHECK_THROWS_AS(minimal_extension(prob, Polynomial::constant(2, 1.0)), InputError);
    auto bad = problem(gaussian(), 3, 3, -1.0);
    CHECK_THROWS_AS(minimal_extension(bad, Polynomial::constant(1, 1.0)), InputError);
    auto fixed_w = problem(WeightSpec::zero(1, 0), 3, 3);
    CHECK_THROWS_AS(build_joint_model(fixed_w), InputError);
  }

  TEST_CASE("fiber norms of the extension") {
    auto prob = problem(WeightSpec::zero(1, 1), 4, 2);
    Polynomial f = Polynomial::variable(1, 0);
    auto ext = minimal_extension(prob, f);
    CHECK(fiber_norm_squared(prob, ext.extension, Complex(0.3, 0.2)) == doctest::Approx(kPi / 2));
    CHECK(ext.fiber_norm == doctest::Approx(kPi / 2));
  }

  TEST_CASE("jensen chain") {
    auto dirac = FamilyEvaluator(FunctionalFamily::constant(Functional::dirac(1), 1));
    std::vector<Complex> z0 = {0.2};
    auto rep = jensen_chain(problem(gaussian(), 10, 10), dirac, z0);
    CHECK(rep.holds);
    CHECK(rep.l0 >= rep.l1 - 1e-3);
    CHECK(rep.l1 >= rep.l2 - 1e-3);
    CHECK(rep.l2 >= rep.l3 - 1e-3);
    CHECK(std::abs(rep.l1 - rep.l1_quadrature) < 1e-6);

    auto flat = jensen_chain(problem(WeightSpec::zero(1, 1), 6, 4), dirac, z0);
    CHECK(flat.holds);
    CHECK(flat.l0 == doctest::Approx(flat.l1).epsilon(1e-9));

    FunctionalFamily moving(1, 1);
    moving.set({0}, Polynomial::constant(1, 1.0));
    moving.set({1}, Polynomial::variable(1, 0));
    Polynomial g = Polynomial::variable(2, 0) - Polynomial::variable(2, 1) * 0.5;
    auto twisted = jensen_chain(problem(WeightSpec::modulus_squared(1, g, 1.0), 6, 6, 0.5),
                                FamilyEvaluator(moving), z0);
    CHECK(twisted.holds);

    std::vector<Complex> outside = {1.5};
    CHECK_THROWS_AS(jensen_chain(problem(gaussian(), 4, 4), dirac, outside), InputError);
  }
}
