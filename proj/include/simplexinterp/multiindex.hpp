#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace simplexinterp {

/// Nonnegative integer tuple of arity 1..4.
///
/// Used for derivative orders and lattice anchors (arity d) as well as
/// barycentric node labels (arity d+1). The order |γ| is always recomputed
/// from the components.
class MultiIndex {
 public:
  static constexpr std::size_t kMaxArity = 4;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t arity);
  MultiIndex(std::initializer_list<int> components);

  static MultiIndex zero(std::size_t arity) { return MultiIndex(arity); }
  static MultiIndex unit(std::size_t arity, std::size_t axis);

  std::size_t arity() const { return arity_; }
  int operator[](std::size_t i) const { return c_[i]; }
  void set(std::size_t i, int value);

  int order() const;
  /// δ! = n_1! ⋯ n_d!, exact.
  std::uint64_t factorial() const;
  /// δ·η = Σ n_i m_i.
  int dot(const MultiIndex& other) const;
  /// Componentwise partial order η ≤ δ.
  bool is_le(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Throws InvalidArgument if any component would become negative.
  MultiIndex operator-(const MultiIndex& other) const;

  bool operator==(const MultiIndex& other) const;
  /// Lexicographic over components; arity compared first.
  std::strong_ordering operator<=>(const MultiIndex& other) const;

  /// "(1,0,2)"
  std::string to_string() const;

 private:
  std::array<int, kMaxArity> c_{};
  std::size_t arity_ = 0;
};

/// n! exactly; n ≤ 20.
std::uint64_t factorial(int n);
/// C(n, k) exactly; 0 when k < 0 or k > n.
std::uint64_t binomial(int n, int k);

/// All γ ∈ N_0^d with |γ| = m, lexicographically ascending.
std::vector<MultiIndex> enumerate_order(int d, int m);
/// Orders 0..max_order concatenated, each block lexicographic. This graded
/// ordering indexes polynomial coefficients and lattice nodes everywhere.
std::vector<MultiIndex> enumerate_up_to(int d, int max_order);
/// Position of γ in enumerate_up_to(d, ·).
std::size_t graded_rank(const MultiIndex& gamma);
/// dim P_k in d variables = C(k+d, d).
std::size_t dim_polynomials(int d, int k);

/// m!/γ! as an exact integer. Throws InvalidArgument unless |γ| = m.
std::uint64_t multinomial_weight(int m, const MultiIndex& gamma);

/// Checks (k+1)!/δ! = Σ_{γ+η=δ, |γ|=m, |η|=k+1-m} (m!/γ!)((k+1-m)!/η!)
/// in integer arithmetic, with k+1 := |δ|. False when m is out of range.
bool split_identity_check(const MultiIndex& delta, int m);

}  // namespace simplexinterp
