#pragma once

#include <vector>

#include "simplexinterp/geometry.hpp"
#include "simplexinterp/multiindex.hpp"

namespace simplexinterp {

inline constexpr int kMaxQuadratureExactness = 40;

/// Gauss–Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Rule on K̂ with positive weights summing to 1/d!.
struct QuadratureRule {
  int dim = 2;
  int exactness = 0;
  std::vector<Point> points;
  std::vector<double> weights;
};

/// Collapsed-coordinate (Duffy) tensor Gauss rule on K̂; the Jacobian factors
/// (1−ξ₁)^{d−1}(1−ξ₂)^{d−2} are absorbed by raising the 1D order per axis.
QuadratureRule simplex_rule(int d, int exactness);

/// ∫_{K̂} x^γ = γ!/(|γ|+d)!, exact rational evaluated in double.
double reference_moment(const MultiIndex& gamma);

/// Max relative error of `rule` over all monomials of degree ≤ its exactness.
double certify_rule(const QuadratureRule& rule);

/// Rule mapped to K: points in K, weights scaled by |det F_K|.
struct MappedRule {
  std::vector<Point> points;
  std::vector<double> weights;
};
MappedRule map_rule(const Simplex& K, const QuadratureRule& rule);

/// Rule copied onto each of the (2^d)^levels sub-simplices of a uniform
/// red refinement of K.
MappedRule subdivided_rule(const Simplex& K, const QuadratureRule& rule, int levels);

/// Uniform red refinement of K into 2^d children (4 triangles or 8 tetrahedra).
std::vector<Simplex> red_refine(const Simplex& K);

}  // namespace simplexinterp
