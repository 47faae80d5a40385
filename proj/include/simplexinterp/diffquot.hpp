#pragma once

#include <vector>

#include "simplexinterp/geometry.hpp"
#include "simplexinterp/linalg.hpp"
#include "simplexinterp/multiindex.hpp"
#include "simplexinterp/polynomial.hpp"

namespace simplexinterp {

/// Δ^δ x_γ = x_{γ+δ}. Throws OutOfLattice when |γ|+|δ| > k.
MultiIndex shift_node(const MultiIndex& gamma, const MultiIndex& delta, int k);

/// x_γ = γ/k on K̂.
Point reference_node(const MultiIndex& gamma, int k);

/// f^{|δ|}[x_γ, Δ^δ x_γ] = k^{|δ|} Σ_{η≤δ} (−1)^{|δ|−|η|}/(η!(δ−η)!) f(x_{γ+η}).
double diff_quotient(const ScalarField& f, int k, const MultiIndex& gamma, const MultiIndex& delta);

struct RecursiveQuotient {
  double value = 0.0;
  int depth = 0;  // levels down to point evaluations, = |δ|
};

/// Same quotient via f^{|δ|}[x_γ,·] = k/(δ·η) (f^{|δ|−1}[x_{γ+η},·] − f^{|δ|−1}[x_γ,·])
/// with δ−η as the lower extent. The first step uses the given unit η, later
/// steps peel the first nonzero axis.
RecursiveQuotient diff_quotient_recursive(const ScalarField& f, int k, const MultiIndex& gamma,
                                          const MultiIndex& delta, const MultiIndex& eta);

/// The rectangle □_γ^δ ⊂ K̂ with corners x_γ and x_{γ+δ}. Its integral is the
/// iterated simplex integral, not the area integral.
struct Box {
  int k = 1;
  MultiIndex anchor;
  MultiIndex extent;

  int dim() const { return static_cast<int>(anchor.arity()); }
  /// Segment or point: some component of δ is zero.
  bool degenerate() const;
};

/// Validates |γ|+|δ| ≤ k and matching arities.
Box make_box(int k, const MultiIndex& gamma, const MultiIndex& delta);

/// Cardinal B-spline of order n on knots 0..n, unit integral.
double cardinal_bspline(int n, double x);

/// ∫_□ v. An axis with extent n ≥ 1 carries the iterated integral over
/// 1 ≥ w_1 ≥ … ≥ w_n ≥ 0 of v at x_i = (γ_i + w_1 + … + w_n)/k, i.e.
/// ∫₀ⁿ v M_n(σ)/n! dσ, by Gauss on each unit knot interval exact to degree
/// q + n − 1. Axes with extent 0 are fixed at γ_i/k.
double box_integral(const ScalarField& v, const Box& box, int quad_order);

/// |f^{|δ|}[x_γ, Δ^δ x_γ] − ∫_□ ∂^δ f| relative to the larger of the two and
/// of max|coeff(∂^δ f)|/δ!.
double integral_representation_check(const Polynomial& f, int k, const MultiIndex& gamma, const MultiIndex& delta,
                                     int quad_order);

/// All boxes with extent δ, anchors |γ| ≤ k−|δ| in graded order.
std::vector<Box> enumerate_boxes(int k, const MultiIndex& delta);

/// max over 1 ≤ |δ| ≤ k and all anchors of |∫_□ ∂^δ (v − I^k v)| on K̂,
/// divided by max_node |v| (1 if that is zero).
double annihilation_check(const Polynomial& v, int k, int quad_order);

struct BoxMoments {
  linalg::Matrix matrix;  // rows: boxes, columns: monomials of P_{k−|δ|}
  double sigma_min = 0.0;
};

/// M[i][j] = ∫_{□_i} x^{e_j}; square because #boxes = dim P_{k−|δ|}.
BoxMoments box_moment_matrix(int k, const MultiIndex& delta, int quad_order);

}  // namespace simplexinterp
