#include <doctest.h>

#include "helpers.hpp"
#include "xibergman/fiberwise.hpp"

using namespace xib;
using namespace xib::test;

namespace {

// psi = 2 log|z1 - w z2| on the unit bidisc over the unit disc, xi = d/dz2.
FamilyProblem p_star(int degree = 4) {
  Polynomial g = Polynomial::variable(3, 0) - Polynomial::variable(3, 2) * Polynomial::variable(3, 1);
  FamilyProblem p;
  p.fiber = Polydisc::unit(2);
  p.base = Polydisc::unit(1);
  p.weight = WeightSpec::log_divisor(2, g, 1.0);
  p.family = FamilyEvaluator(FunctionalFamily::constant(Functional::derivative({0, 1}), 1));
  p.degree = degree;
  return p;
}

FamilyProblem dirac_problem(WeightSpec weight, int degree) {
  FamilyProblem p;
  p.fiber = Polydisc::unit(1);
  p.base = Polydisc::unit(1);
  p.weight = std::move(weight);
  p.family = FamilyEvaluator(FunctionalFamily::constant(Functional::dirac(1), 1));
  p.degree = degree;
  return p;
}

FunctionalFamily one_plus_w_derivative() {
  FunctionalFamily fam(1, 1);
  fam.set({0}, Polynomial::constant(1, 1.0));
  fam.set({1}, Polynomial::variable(1, 0));
  return fam;
}

Polynomial z_minus_w() { return Polynomial::variable(2, 0) - Polynomial::variable(2, 1); }

}  // namespace

TEST_SUITE("fiberwise") {
  TEST_CASE("kernel on fiber") {
    auto flat = dirac_problem(WeightSpec::zero(1, 1), 6);
    std::vector<Complex> o = {0.0};
    for (Complex w : {Complex(0.0), Complex(0.4, -0.3)}) {
      std::vector<Complex> ww = {w};
      CHECK(kernel_on_fiber(flat, ww, o) == doctest::Approx(1 / kPi).epsilon(1e-13));
    }

    FiberKernel k(p_star());
    std::vector<Complex> oz = {0.0, 0.0};
    for (Complex w : {Complex(0.5), Complex(-0.2, 0.7), Complex(0.05)}) {
      std::vector<Complex> ww = {w};
      CHECK(k(ww, oz) == doctest::Approx(std::norm(w) / (kPi * kPi)).epsilon(1e-12));
    }
    std::vector<Complex> zero = {0.0};
    CHECK(k(zero, oz) == doctest::Approx(0.0).epsilon(1e-300));
    CHECK(k(zero, oz) < 1e-30);

    std::vector<Complex> outside = {1.5};
    CHECK_THROWS_AS(k(outside, oz), InputError);
  }

  TEST_CASE("closed form of the log kernel on a grid") {
    FiberKernel k(p_star());
    std::vector<Complex> oz = {0.0, 0.0};
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        Complex w(-0.6 + 0.15 * i, -0.6 + 0.15 * j);
        if (std::abs(w) < 0.05) continue;
        std::vector<Complex> ww = {w};
        CHECK(std::abs(std::log(k(ww, oz)) - (2 * std::log(std::abs(w)) - 2 * std::log(kPi))) < 1e-6);
      }
  }

  TEST_CASE("circle sub-mean conventions") {
    auto harmonic = circle_submean([](Complex t) { return std::norm(t); }, 0.5, 0.2, 64);
    CHECK(harmonic.verdict == Verdict::Pass);
    CHECK(std::abs(harmonic.max_violation) < 1e-12);

    auto minus_inf_center = circle_submean([](Complex t) { return std::norm(t); }, 0.0, 0.2, 32);
    CHECK(minus_inf_center.verdict == Verdict::Pass);
    CHECK(std::isinf(minus_inf_center.center_value));

    auto hole = circle_submean([](Complex t) { return std::abs(t) < 0.1 ? 1.0 : 0.0; }, 0.0, 0.5, 32);
    CHECK(hole.verdict == Verdict::Fail);
    CHECK(hole.infinity_count == 32);

    auto bump = circle_submean([](Complex t) { return std::exp(-std::norm(t)); }, 0.0, 0.5, 32);
    CHECK(bump.verdict == Verdict::Fail);
    CHECK(bump.max_violation == doctest::Approx(0.25));

    CHECK_THROWS_AS(circle_submean([](Complex) { return 1.0; }, 0.0, 0.5, 8), InputError);
  }

  TEST_CASE("base verification on P*") {
    FiberKernel k(p_star());
    std::vector<Complex> oz = {0.0, 0.0}, w0 = {0.3}, zero = {0.0};
    auto rep = psh_verify_base(k, oz, w0, 0.2, 64);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(std::abs(rep.max_violation) < 1e-9);
    auto trivial = psh_verify_base(k, oz, zero, 0.5, 32);
    CHECK(trivial.verdict == Verdict::Pass);
    CHECK(std::isinf(trivial.center_value));
    std::vector<Complex> edge = {0.9};
    CHECK_THROWS_AS(psh_verify_base(k, oz, edge, 0.2, 32), InputError);
  }

  TEST_CASE("joint verification") {
    FiberKernel k(p_star());
    std::vector<Complex> oz = {0.0, 0.0}, w0 = {0.3};
    std::vector<Complex> point = {0.0, 0.0, 0.3}, dir = {0.0, 0.0, 1.0};
    auto base = psh_verify_base(k, oz, w0, 0.2, 64);
    auto joint = psh_verify_joint(k, point, dir, 0.0, 0.2, 64);
    CHECK(std::abs(base.circle_average - joint.circle_average) <= 1e-12);
    CHECK(std::abs(base.center_value - joint.center_value) <= 1e-12);

    // psi = |z - w|^2 with the Dirac family on a mixed line
    auto mixed = dirac_problem(WeightSpec::modulus_squared(1, z_minus_w(), 1.0), 20);
    FiberKernel km(mixed);
    std::vector<Complex> p = {0.1, -0.1}, d = {Complex(0.6, 0.2), Complex(-0.3, 0.5)};
    for (int samples : {64, 128}) {
      auto rep = psh_verify_joint(km, p, d, 0.0, 0.3, samples);
      CHECK(rep.verdict == Verdict::Pass);
    }
    auto r64 = psh_verify_joint(km, p, d, 0.0, 0.3, 64);
    auto r128 = psh_verify_joint(km, p, d, 0.0, 0.3, 128);
    CHECK(std::abs(r64.circle_average - r128.circle_average) < 1e-4);

    std::vector<Complex> far = {0.9, 0.0};
    CHECK_THROWS_AS(psh_verify_joint(km, far, d, 0.0, 0.5, 32), InputError);
  }

  TEST_CASE("reports are deterministic") {
    auto mixed = dirac_problem(WeightSpec::modulus_squared(1, z_minus_w(), 1.0), 12);
    FiberKernel a(mixed), b(mixed);
    std::vector<Complex> z = {0.2}, w0 = {Complex(0.1, 0.2)};
    auto ra = psh_verify_base(a, z, w0, 0.3, 32);
    auto rb = psh_verify_base(b, z, w0, 0.3, 32);
    CHECK(ra.circle_average == rb.circle_average);
    CHECK(ra.center_value == rb.center_value);
  }

  TEST_CASE("upper semicontinuity spot checks") {
    std::vector<double> radii = {0.2, 0.1, 0.05, 0.025};
    FiberKernel flat(dirac_problem(WeightSpec::zero(1, 1), 8));
    std::vector<Complex> z0 = {0.0}, w0 = {0.0};
    CHECK(usc_spot_check(flat, z0, w0, radii).verdict == Verdict::Pass);

    FiberKernel k(p_star());
    std::vector<Complex> oz = {0.0, 0.0};
    auto rep = usc_spot_check(k, oz, w0, radii);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.center_kernel < 1e-30);

    // jump up at the center's neighbourhood: limsup exceeds the value
    JointKernelFn jump = [](std::span<const Complex> z, std::span<const Complex> w) {
      return std::abs(z[0]) + std::abs(w[0]) > 0.0 ? 1.0 : 0.0;
    };
    CHECK(usc_spot_check(jump, z0, w0, radii).verdict == Verdict::Fail);
    std::vector<double> two = {0.2, 0.1};
    CHECK_THROWS_AS(usc_spot_check(jump, z0, w0, two), InputError);
  }

  TEST_CASE("holomorphic family and its anti-holomorphic control") {
    FamilyProblem twin;
    twin.fiber = Polydisc::unit(1);
    twin.base = Polydisc::unit(1);
    twin.weight = WeightSpec::log_divisor(1, z_minus_w(), 1.0);
    twin.family = FamilyEvaluator(one_plus_w_derivative());
    twin.degree = 12;
    FamilyProblem control = twin;
    control.family = anti_holomorphic_control(one_plus_w_derivative());

    FiberKernel kt(twin), kc(control);
    std::vector<Complex> o = {0.0};
    int fails = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        std::vector<Complex> w0 = {Complex(-0.4 + 0.2 * i, -0.4 + 0.2 * j)};
        CHECK(psh_verify_base(kt, o, w0, 0.3, 32).verdict == Verdict::Pass);
        if (psh_verify_base(kc, o, w0, 0.3, 32).verdict == Verdict::Fail) ++fails;
      }
    CHECK(fails > 0);
  }
}
