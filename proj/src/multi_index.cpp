#include "xibergman/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace xib {

MultiIndex::MultiIndex(std::initializer_list<int> entries) : e_(entries) {
  for (int v : e_)
    if (v < 0) throw InputError("multi-index entries must be non-negative");
}

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
  for (int v : e_)
    if (v < 0) throw InputError("multi-index entries must be non-negative");
}

MultiIndex MultiIndex::unit(std::size_t arity, std::size_t i) {
  MultiIndex m(arity);
  m.e_.at(i) = 1;
  return m;
}

int MultiIndex::order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.arity() != arity()) throw InputError("multi-index arity mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

bool MultiIndex::dominates(const MultiIndex& o) const {
  if (o.arity() != arity()) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (o.e_[i] > e_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (!dominates(o)) throw InputError("multi-index subtraction would go negative");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

MultiIndex MultiIndex::concat(const MultiIndex& o) const {
  std::vector<int> v = e_;
  v.insert(v.end(), o.e_.begin(), o.e_.end());
  return MultiIndex(std::move(v));
}

MultiIndex MultiIndex::head(std::size_t n) const {
  return MultiIndex(std::vector<int>(e_.begin(), e_.begin() + static_cast<long>(n)));
}

MultiIndex MultiIndex::tail(std::size_t from) const {
  return MultiIndex(std::vector<int>(e_.begin() + static_cast<long>(from), e_.end()));
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
  os << ')';
  return os.str();
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob;
  if (a.arity() != b.arity()) return a.arity() < b.arity();
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

namespace {

void fill_order(std::size_t n, int remaining, std::size_t pos, std::vector<int>& cur,
                std::vector<MultiIndex>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    fill_order(n, remaining - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> indices_of_order(std::size_t n, int degree) {
  std::vector<MultiIndex> out;
  if (degree < 0) return out;
  if (n == 0) {
    if (degree == 0) out.emplace_back(std::size_t{0});
    return out;
  }
  std::vector<int> cur(n, 0);
  fill_order(n, degree, 0, cur, out);
  return out;
}

std::vector<MultiIndex> indices_up_to(std::size_t n, int degree) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= degree; ++d) {
    auto layer = indices_of_order(n, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t count_up_to(std::size_t n, int degree) {
  if (degree < 0) return 0;
  return static_cast<std::size_t>(
      std::llround(binomial(degree + static_cast<int>(n), static_cast<int>(n))));
}

}  // namespace xib
