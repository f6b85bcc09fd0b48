#include <doctest.h>

#include "helpers.hpp"
#include "xibergman/multi_index.hpp"
#include "xibergman/polynomial.hpp"

using namespace xib;
using namespace xib::test;

TEST_SUITE("polynomial") {
  TEST_CASE("graded-lex order of small index sets") {
    auto idx = indices_up_to(2, 2);
    std::vector<MultiIndex> expected = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    CHECK(idx == expected);
    CHECK(count_up_to(2, 2) == 6);
    CHECK(count_up_to(3, 4) == 35);
    CHECK(indices_of_order(3, 2).size() == 6);
    CHECK(binomial(10, 3) == doctest::Approx(120));
  }

  TEST_CASE("multi-index arithmetic") {
    MultiIndex a{2, 1}, b{1, 1};
    CHECK(a.order() == 3);
    CHECK(a.dominates(b));
    CHECK_FALSE(b.dominates(a));
    CHECK(a - b == MultiIndex{1, 0});
    CHECK(a.concat(MultiIndex{4}) == MultiIndex{2, 1, 4});
    CHECK(MultiIndex{2, 1, 4}.head(2) == a);
    CHECK(MultiIndex{2, 1, 4}.tail(2) == MultiIndex{4});
    CHECK_THROWS_AS(MultiIndex({-1, 0}), InputError);
  }

  TEST_CASE("arithmetic agrees with pointwise evaluation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      auto p = random_polynomial(rng, 2, 3);
      auto q = random_polynomial(rng, 2, 2);
      auto z = random_point(rng, 2, 1.5);
      CHECK(close_abs((p * q).evaluate(z), p.evaluate(z) * q.evaluate(z), 1e-10));
      CHECK(close_abs((p + q).evaluate(z), p.evaluate(z) + q.evaluate(z), 1e-12));
      CHECK(close_abs((p - q).evaluate(z), p.evaluate(z) - q.evaluate(z), 1e-12));
    }
  }

  TEST_CASE("shift re-expands the same polynomial") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      auto p = random_polynomial(rng, 2, 4);
      auto c = random_point(rng, 2, 1.0);
      auto q = p.shifted(c);
      auto u = random_point(rng, 2, 1.0);
      std::vector<Complex> z = {c[0] + u[0], c[1] + u[1]};
      CHECK(close_abs(q.evaluate(u), p.evaluate(z), 1e-10));
    }
  }

  TEST_CASE("taylor coefficients") {
    // p = 3 + 2z + 5z^2; at 1: p = 10, p' = 12, p''/2 = 5
    Polynomial p(1);
    p.set({0}, 3.0);
    p.set({1}, 2.0);
    p.set({2}, 5.0);
    std::vector<Complex> one = {1.0};
    CHECK(p.taylor_coefficient(one, {0}) == Complex(10.0));
    CHECK(p.taylor_coefficient(one, {1}) == Complex(12.0));
    CHECK(p.taylor_coefficient(one, {2}) == Complex(5.0));
    CHECK(p.taylor_coefficient(one, {3}) == Complex(0.0));
  }

  TEST_CASE("restriction and splitting in (z, w)") {
    // g = z1 - w z2 as a polynomial in (z1, z2, w)
    Polynomial g = Polynomial::variable(3, 0) - Polynomial::variable(3, 2) * Polynomial::variable(3, 1);
    std::vector<Complex> w = {0.5};
    auto gw = g.restrict_trailing(2, w);
    CHECK(gw.arity() == 2);
    CHECK(gw.coeff({1, 0}) == Complex(1.0));
    CHECK(gw.coeff({0, 1}) == Complex(-0.5));
    auto parts = g.split_leading(2);
    CHECK(parts.size() == 2);
    CHECK(parts.at(MultiIndex{0, 1}).coeff({1}) == Complex(-1.0));
    auto e = Polynomial::variable(1, 0).embedded(3, 2);
    CHECK(e.coeff({0, 0, 1}) == Complex(1.0));
  }

  TEST_CASE("division remainder decides divisibility") {
    Polynomial g = Polynomial::variable(2, 0) - Polynomial::variable(2, 1);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
      auto h = random_polynomial(rng, 2, 3);
      if (h.is_zero()) continue;
      CHECK(division_remainder(g * h, g).is_zero(1e-9));
    }
    CHECK_FALSE(division_remainder(Polynomial::variable(2, 0), g).is_zero(1e-9));
  }

  TEST_CASE("identity test with normalization") {
    Polynomial a = Polynomial::constant(1, 1e6);
    Polynomial b = Polynomial::constant(1, 1e6 + 1e-5);
    CHECK(polynomials_equal(a, b));
    CHECK_FALSE(polynomials_equal(a, Polynomial::constant(1, 1e6 + 1.0)));
    CHECK(Polynomial(2).degree() == -1);
    CHECK_THROWS_AS(Polynomial(1) + Polynomial(2), InputError);
  }
}
