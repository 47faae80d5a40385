#pragma once

#include <vector>

#include "simplexinterp/geometry.hpp"
#include "simplexinterp/polynomial.hpp"

namespace simplexinterp {

inline constexpr int kMaxLagrangeOrder = 6;
/// κ₁ of the column-equilibrated Vandermonde matrix above which an element
/// is rejected as ill-conditioned.
inline constexpr double kVandermondeConditionLimit = 1e12;

enum class BasisRoute {
  /// pullback for axis squeezes of K̂, vandermonde otherwise
  automatic,
  /// generalized Vandermonde at Σ^k(K), dense LU with partial pivoting
  vandermonde,
  /// nodal basis of K̂ composed with F_K⁻¹
  pullback,
};

/// Nodal basis of P_k on K in lattice order, with the interpolation operator
/// I_K^k. Immutable after construction.
class LagrangeBasis {
 public:
  LagrangeBasis(const Simplex& K, int k, BasisRoute route = BasisRoute::automatic);

  int order() const { return k_; }
  const Simplex& element() const { return K_; }
  const std::vector<LatticeNode>& nodes() const { return nodes_; }
  const std::vector<Polynomial>& functions() const { return basis_; }
  const Polynomial& operator[](std::size_t i) const { return basis_[i]; }
  std::size_t size() const { return basis_.size(); }
  BasisRoute route() const { return route_; }
  /// Condition number of the Vandermonde system actually solved (on K̂ for
  /// the pullback route).
  double vandermonde_condition() const { return condition_; }

  Polynomial interpolate(const ScalarField& f) const;
  Polynomial interpolate(const Polynomial& f) const;

 private:
  Simplex K_;
  int k_;
  BasisRoute route_;
  double condition_ = 0.0;
  std::vector<LatticeNode> nodes_;
  std::vector<Polynomial> basis_;
};

LagrangeBasis lagrange_basis(const Simplex& K, int k, BasisRoute route = BasisRoute::automatic);
Polynomial interpolate(const Simplex& K, int k, const ScalarField& f);

}  // namespace simplexinterp
