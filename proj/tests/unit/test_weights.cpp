#include <doctest.h>

#include "helpers.hpp"
#include "xibergman/weights.hpp"

using namespace xib;
using namespace xib::test;

namespace {

Polynomial z1_minus_w_z2() {
  return Polynomial::variable(3, 0) - Polynomial::variable(3, 2) * Polynomial::variable(3, 1);
}

}  // namespace

TEST_SUITE("weights") {
  TEST_CASE("evaluation") {
    std::vector<Complex> z = {Complex(0.3, 0.4)};
    CHECK(eval_weight(WeightSpec::zero(1), z) == 0.0);
    std::vector<Complex> half = {0.5};
    CHECK(eval_weight(WeightSpec::log_monomial(1, 0, {1.0}), half) ==
          doctest::Approx(2.0 * std::log(0.5)));
    CHECK(eval_weight(WeightSpec::log_monomial(1, 0, {1.0}), half) == doctest::Approx(-1.3862944));

    auto div = WeightSpec::log_divisor(2, z1_minus_w_z2(), 1.0);
    std::vector<Complex> zz = {1.0, 1.0}, w = {1.0};
    CHECK(eval_weight(div, zz, w) == -std::numeric_limits<double>::infinity());
    std::vector<Complex> w2 = {0.5};
    CHECK(eval_weight(div, zz, w2) == doctest::Approx(2.0 * std::log(0.5)));

    auto quad = WeightSpec::quadratic(1, 1, {1.0, 2.0});
    std::vector<Complex> wz = {Complex(0.0, 1.0)};
    CHECK(eval_weight(quad, z, wz) == doctest::Approx(0.25 + 2.0));
    CHECK(eval_weight(WeightSpec::sum({quad, WeightSpec::constant(1, 1, 3.0)}), z, wz) ==
          doctest::Approx(5.25));
    CHECK_THROWS_AS(eval_weight(quad, z), InputError);
    CHECK_THROWS_AS(WeightSpec::quadratic(1, 0, {-1.0}), InputError);
  }

  TEST_CASE("fiber restriction") {
    auto div = WeightSpec::log_divisor(2, z1_minus_w_z2(), 1.0);
    CHECK(div.depends_on_w());
    std::vector<Complex> w = {0.5};
    auto fw = div.restrict_to_fiber(w);
    CHECK(fw.w_arity() == 0);
    CHECK_FALSE(fw.depends_on_w());
    std::vector<Complex> z = {Complex(0.2, 0.1), Complex(-0.3, 0.4)};
    CHECK(fw.evaluate(z) == doctest::Approx(div.evaluate(z, w)));
    CHECK_FALSE(WeightSpec::quadratic(1, 1, {1.0, 0.0}).depends_on_w());
    CHECK(div.plus_constant(2.0).evaluate(z, w) == doctest::Approx(div.evaluate(z, w) + 2.0));
  }

  TEST_CASE("monomial moments") {
    std::vector<double> r1 = {1.0}, r2 = {1.0, 1.0}, c0 = {0.0}, c00 = {0.0, 0.0};
    CHECK(monomial_moment(r1, {1}, c0) == doctest::Approx(kPi / 2));
    CHECK(monomial_moment(r2, {1, 0}, c00) == doctest::Approx(kPi * kPi / 2));
    std::vector<double> half = {0.5}, one = {1.0};
    CHECK(monomial_moment(r1, {0}, half) == doctest::Approx(2 * kPi));
    CHECK(std::isinf(monomial_moment(r1, {0}, one)));
    std::vector<double> r = {0.5};
    CHECK(monomial_moment(r, {2}, c0) == doctest::Approx(kPi * std::pow(0.5, 6) / 3));
  }

  TEST_CASE("multiplier ideal oracle") {
    auto lm = WeightSpec::log_monomial(1, 0, {1.5});
    CHECK(multiplier_membership_oracle(lm, Polynomial::variable(1, 0)));
    CHECK_FALSE(multiplier_membership_oracle(lm, Polynomial::constant(1, 1.0)));
    CHECK(multiplier_membership_oracle(lm, Polynomial::monomial(MultiIndex{2})));

    Polynomial g = Polynomial::variable(2, 0) - Polynomial::variable(2, 1);
    auto div = WeightSpec::log_divisor(2, g, 1.0);
    CHECK(multiplier_membership_oracle(div, g));
    CHECK_FALSE(multiplier_membership_oracle(div, Polynomial::variable(2, 0)));

    std::mt19937_64 rng(41);
    auto zero = WeightSpec::zero(2);
    for (int i = 0; i < 10; ++i) CHECK(multiplier_membership_oracle(zero, random_polynomial(rng, 2, 3)));

    CHECK(multiplier_membership_oracle(WeightSpec::quadratic(1, 0, {1.0}), Polynomial::constant(1, 1.0)));
    auto mixed = WeightSpec::sum({div, WeightSpec::log_monomial(2, 0, {0.5, 0.0})});
    CHECK_THROWS_AS(multiplier_membership_oracle(mixed, g), InputError);
    CHECK_THROWS_AS(multiplier_membership_oracle(WeightSpec::log_divisor(2, g, 2.0), g), InputError);
  }

  TEST_CASE("multiplier ideal generators") {
    auto gens = multiplier_ideal_generators(WeightSpec::log_monomial(2, 0, {1.5, 0.7}));
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].coeff({1, 0}) == Complex(1.0));
    Polynomial g = Polynomial::variable(2, 0) - Polynomial::variable(2, 1) * 0.5;
    Polynomial shifted = g + Polynomial::constant(2, 1.0);
    auto unit = multiplier_ideal_generators(WeightSpec::log_divisor(2, shifted, 1.0));
    REQUIRE(unit.size() == 1);
    CHECK(unit[0].coeff({0, 0}) != Complex(0.0));
    auto d = multiplier_ideal_generators(WeightSpec::log_divisor(2, g, 1.0));
    REQUIRE(d.size() == 1);
    CHECK(polynomials_equal(d[0], g));
  }

  TEST_CASE("oracle respects the ideal property") {
    std::mt19937_64 rng(42);
    Polynomial g = Polynomial::variable(2, 0) - Polynomial::variable(2, 1) * Complex(0.3, 0.1);
    std::vector<WeightSpec> specs = {WeightSpec::log_monomial(2, 0, {1.5, 0.5}),
                                     WeightSpec::log_monomial(2, 0, {2.2, 1.0}),
                                     WeightSpec::log_divisor(2, g, 1.0)};
    int members = 0;
    for (const auto& spec : specs)
      for (int trial = 0; trial < 40; ++trial) {
        auto f = random_polynomial(rng, 2, 3, 0.4);
        if (trial % 2 == 0) f = f * g;
        auto h = random_polynomial(rng, 2, 2);
        if (multiplier_membership_oracle(spec, f)) {
          ++members;
          CHECK(multiplier_membership_oracle(spec, f * h));
        }
      }
    CHECK(members > 20);
  }

  TEST_CASE("divergence probe") {
    auto scales = default_probe_scales();
    auto one = Polynomial::constant(1, 1.0);
    auto z = Polynomial::variable(1, 0);
    CHECK(divergence_probe(WeightSpec::zero(1), one, scales).verdict == ProbeVerdict::Convergent);
    auto lm = WeightSpec::log_monomial(1, 0, {1.0});
    auto div1 = divergence_probe(lm, one, scales);
    CHECK(div1.verdict == ProbeVerdict::Divergent);
    CHECK(div1.slope <= -0.1);
    CHECK(divergence_probe(lm, z, scales).verdict == ProbeVerdict::Convergent);

    Polynomial g = Polynomial::variable(2, 0) - Polynomial::variable(2, 1);
    auto dv = WeightSpec::log_divisor(2, g, 1.0);
    CHECK(divergence_probe(dv, g, scales).verdict == ProbeVerdict::Convergent);
    CHECK(divergence_probe(dv, Polynomial::variable(2, 0), scales).verdict == ProbeVerdict::Divergent);

    std::vector<double> short_ladder = {0.1, 0.01, 0.001};
    CHECK_THROWS_AS(divergence_probe(lm, one, short_ladder), InputError);
  }

  TEST_CASE("probe agrees with the monomial oracle") {
    auto scales = default_probe_scales();
    for (auto c : {std::vector<double>{1.0, 0.0}, std::vector<double>{1.5, 2.0},
                   std::vector<double>{0.5, 1.0}}) {
      auto spec = WeightSpec::log_monomial(2, 0, c);
      for (const auto& alpha : indices_up_to(2, 6)) {
        auto f = Polynomial::monomial(alpha);
        auto probe = divergence_probe(spec, f, scales);
        bool member = multiplier_membership_oracle(spec, f);
        CHECK_MESSAGE(probe.verdict == (member ? ProbeVerdict::Convergent : ProbeVerdict::Divergent),
                      alpha.str(), " slope ", probe.slope);
      }
    }
  }
}
