#include <doctest.h>

#include "helpers.hpp"
#include "xibergman/poly_matrix.hpp"

using namespace xib;
using namespace xib::test;

namespace {

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t m, int deg) {
  PolyMatrix a(r, c, m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = random_polynomial(rng, m, deg);
  return a;
}

}  // namespace

TEST_SUITE("poly_matrix") {
  TEST_CASE("symbolic determinant matches numeric determinant") {
    std::mt19937_64 rng(61);
    for (std::size_t k : {1u, 2u, 3u, 4u, 5u}) {
      for (int trial = 0; trial < 5; ++trial) {
        auto a = random_matrix(rng, k, k, 2, 2);
        auto det = determinant(a);
        for (int s = 0; s < 3; ++s) {
          auto w = random_point(rng, 2, 1.0);
          Complex numeric = a.evaluate(w).determinant();
          CHECK(std::abs(det.evaluate(w) - numeric) <= 1e-9 * std::max(1.0, std::abs(numeric)));
        }
      }
    }
    CHECK(determinant(PolyMatrix(0, 0, 1)).coeff({0}) == Complex(1.0));
    CHECK_THROWS_AS(determinant(PolyMatrix(2, 3, 1)), InputError);
  }

  TEST_CASE("product and evaluation commute") {
    std::mt19937_64 rng(62);
    auto a = random_matrix(rng, 3, 4, 1, 2);
    auto b = random_matrix(rng, 4, 2, 1, 3);
    auto w = random_point(rng, 1, 1.0);
    Eigen::MatrixXcd lhs = (a * b).evaluate(w);
    Eigen::MatrixXcd rhs = a.evaluate(w) * b.evaluate(w);
    CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
    CHECK_THROWS_AS(a * a, InputError);
  }

  TEST_CASE("submatrix and zero test") {
    PolyMatrix a(2, 2, 1);
    a(0, 1) = Polynomial::variable(1, 0);
    a(1, 0) = Polynomial::constant(1, 3.0);
    std::vector<std::size_t> r = {1}, c = {0, 1};
    auto s = a.submatrix(r, c);
    CHECK(s.rows() == 1);
    CHECK(s(0, 0).coeff({0}) == Complex(3.0));
    CHECK(a.max_abs_coeff() == 3.0);
    CHECK_FALSE(a.is_zero(1e-10));
    PolyMatrix z(2, 2, 1);
    z(0, 0) = Polynomial::constant(1, 1e-14);
    CHECK(z.is_zero(1e-10));
  }
}
