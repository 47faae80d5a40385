#include "simplexinterp/multiindex.hpp"

#include <algorithm>
#include <numeric>

#include "simplexinterp/errors.hpp"

namespace simplexinterp {

MultiIndex::MultiIndex(std::size_t arity) : arity_(arity) {
  if (arity < 1 || arity > kMaxArity) {
    throw InvalidArgument("multi-index arity must be in [1, 4], got " + std::to_string(arity));
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> components) : MultiIndex(components.size()) {
  std::size_t i = 0;
  for (int v : components) set(i++, v);
}

MultiIndex MultiIndex::unit(std::size_t arity, std::size_t axis) {
  MultiIndex e(arity);
  if (axis >= arity) throw InvalidArgument("unit multi-index axis out of range");
  e.c_[axis] = 1;
  return e;
}

void MultiIndex::set(std::size_t i, int value) {
  if (i >= arity_) throw InvalidArgument("multi-index component out of range");
  if (value < 0) throw InvalidArgument("multi-index components must be nonnegative");
  c_[i] = value;
}

int MultiIndex::order() const { return std::accumulate(c_.begin(), c_.begin() + arity_, 0); }

std::uint64_t MultiIndex::factorial() const {
  std::uint64_t f = 1;
  for (std::size_t i = 0; i < arity_; ++i) f *= simplexinterp::factorial(c_[i]);
  return f;
}

int MultiIndex::dot(const MultiIndex& other) const {
  if (other.arity_ != arity_) throw InvalidArgument("multi-index arity mismatch");
  int s = 0;
  for (std::size_t i = 0; i < arity_; ++i) s += c_[i] * other.c_[i];
  return s;
}

bool MultiIndex::is_le(const MultiIndex& other) const {
  if (other.arity_ != arity_) throw InvalidArgument("multi-index arity mismatch");
  for (std::size_t i = 0; i < arity_; ++i) {
    if (c_[i] > other.c_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.arity_ != arity_) throw InvalidArgument("multi-index arity mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < arity_; ++i) r.c_[i] += other.c_[i];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (other.arity_ != arity_) throw InvalidArgument("multi-index arity mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < arity_; ++i) r.set(i, c_[i] - other.c_[i]);
  return r;
}

bool MultiIndex::operator==(const MultiIndex& other) const {
  if (arity_ != other.arity_) return false;
  for (std::size_t i = 0; i < arity_; ++i) {
    if (c_[i] != other.c_[i]) return false;
  }
  return true;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = arity_ <=> other.arity_; c != 0) return c;
  for (std::size_t i = 0; i < arity_; ++i) {
    if (auto c = c_[i] <=> other.c_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < arity_; ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw InvalidArgument("factorial argument out of exact range [0, 20]");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  // r * (n-k+i) is always divisible by i at this point.
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

namespace {

void enumerate_into(std::vector<MultiIndex>& out, MultiIndex& cur, std::size_t pos, int remaining) {
  const std::size_t d = cur.arity();
  if (pos + 1 == d) {
    cur.set(pos, remaining);
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    cur.set(pos, a);
    enumerate_into(out, cur, pos + 1, remaining - a);
  }
  cur.set(pos, 0);
}

void check_arity(int d) {
  if (d < 1 || d > static_cast<int>(MultiIndex::kMaxArity)) {
    throw InvalidArgument("arity must be in [1, 4], got " + std::to_string(d));
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_order(int d, int m) {
  check_arity(d);
  if (m < 0) throw InvalidArgument("order must be nonnegative");
  std::vector<MultiIndex> out;
  out.reserve(binomial(m + d - 1, d - 1));
  MultiIndex cur(static_cast<std::size_t>(d));
  enumerate_into(out, cur, 0, m);
  return out;
}

std::vector<MultiIndex> enumerate_up_to(int d, int max_order) {
  check_arity(d);
  std::vector<MultiIndex> out;
  out.reserve(dim_polynomials(d, max_order));
  for (int m = 0; m <= max_order; ++m) {
    auto block = enumerate_order(d, m);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

std::size_t dim_polynomials(int d, int k) {
  if (k < 0) return 0;
  return binomial(k + d, d);
}

std::size_t graded_rank(const MultiIndex& gamma) {
  const int d = static_cast<int>(gamma.arity());
  const int m = gamma.order();
  std::size_t rank = dim_polynomials(d, m - 1);
  // Lexicographic rank within the order-m block: count tuples that agree on a
  // prefix and are smaller at the next position.
  int remaining = m;
  for (int i = 0; i + 1 < d; ++i) {
    const int tail = d - i - 1;
    for (int a = 0; a < gamma[i]; ++a) rank += binomial(remaining - a + tail - 1, tail - 1);
    remaining -= gamma[i];
  }
  return rank;
}

std::uint64_t multinomial_weight(int m, const MultiIndex& gamma) {
  if (gamma.order() != m) {
    throw InvalidArgument("multinomial weight requires |gamma| = m (|gamma| = " +
                          std::to_string(gamma.order()) + ", m = " + std::to_string(m) + ")");
  }
  return factorial(m) / gamma.factorial();
}

bool split_identity_check(const MultiIndex& delta, int m) {
  const int top = delta.order();
  if (m < 0 || m > top - 1) return false;
  const std::uint64_t lhs = factorial(top) / delta.factorial();
  std::uint64_t rhs = 0;
  for (const auto& gamma : enumerate_order(static_cast<int>(delta.arity()), m)) {
    if (!gamma.is_le(delta)) continue;
    const MultiIndex eta = delta - gamma;
    rhs += multinomial_weight(m, gamma) * multinomial_weight(top - m, eta);
  }
  return lhs == rhs;
}

}  // namespace simplexinterp
