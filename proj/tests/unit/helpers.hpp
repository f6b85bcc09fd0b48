#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "xibergman/functional.hpp"
#include "xibergman/polynomial.hpp"

namespace xib::test {

constexpr double kPi = 3.14159265358979323846;

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline bool close_abs(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  return {g(rng), g(rng)};
}

/// Uniform point of the disc |t| < radius.
inline Complex random_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = radius * std::sqrt(u(rng));
  double th = 2.0 * kPi * u(rng);
  return std::polar(r, th);
}

inline std::vector<Complex> random_point(std::mt19937_64& rng, std::size_t n, double radius) {
  std::vector<Complex> z(n);
  for (auto& v : z) v = random_in_disc(rng, radius);
  return z;
}

inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, int degree,
                                    double density = 0.7) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Polynomial p(n);
  for (const auto& a : indices_up_to(n, degree))
    if (u(rng) < density) p.set(a, random_complex(rng));
  return p;
}

inline Functional random_functional(std::mt19937_64& rng, std::size_t n, int degree,
                                    double density = 0.6) {
  Functional xi(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& a : indices_up_to(n, degree))
    if (u(rng) < density) xi.set(a, random_complex(rng));
  if (xi.terms().empty()) xi.set(MultiIndex(n), 1.0);
  return xi;
}

}  // namespace xib::test
