#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace xib {

using Complex = std::complex<double>;

/// Raised when inputs violate an operation's contract (arity mismatch,
/// out-of-domain points, malformed descriptors).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Multi-index alpha in N^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t arity) : e_(arity, 0) {}
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex unit(std::size_t arity, std::size_t i);

  std::size_t arity() const { return e_.size(); }
  int order() const;
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  const std::vector<int>& entries() const { return e_; }

  MultiIndex operator+(const MultiIndex& o) const;
  /// Componentwise o <= *this.
  bool dominates(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;

  /// Concatenation (z-part, w-part).
  MultiIndex concat(const MultiIndex& o) const;
  MultiIndex head(std::size_t n) const;
  MultiIndex tail(std::size_t from) const;

  bool operator==(const MultiIndex& o) const = default;

  std::string str() const;

 private:
  std::vector<int> e_;
};

/// Graded order: total degree first, then larger leading exponents first,
/// so {1, z1, z2, z1^2, z1 z2, z2^2, ...}.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices of arity n with |alpha| <= degree, in graded-lex order.
std::vector<MultiIndex> indices_up_to(std::size_t n, int degree);

/// All multi-indices of arity n with |alpha| == degree, in graded-lex order.
std::vector<MultiIndex> indices_of_order(std::size_t n, int degree);

/// Number of monomials of degree <= d in n variables, C(d+n, n).
std::size_t count_up_to(std::size_t n, int degree);

double binomial(int n, int k);

}  // namespace xib
