#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "simplexinterp/multiindex.hpp"

namespace simplexinterp {

/// Cartesian point; 2D data leaves the third component at zero.
using Point = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

enum class DegeneracyPolicy { reject, allow };

/// Triangle (d=2) or tetrahedron (d=3).
///
/// Construction reorders the last two vertices when needed so that the signed
/// volume is positive. Elements with volume below 1e-14·h^d are rejected
/// with SingularGeometry unless DegeneracyPolicy::allow is passed, in which
/// case only metric queries are meaningful.
class Simplex {
 public:
  Simplex(int dim, std::vector<Point> vertices, DegeneracyPolicy policy = DegeneracyPolicy::reject);

  int dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(std::size_t i) const { return vertices_[i]; }
  double volume() const { return volume_; }
  double diameter() const { return diameter_; }
  bool degenerate() const { return degenerate_; }
  bool reoriented() const { return reoriented_; }

  /// Columns x_i − x_0, i = 1..d.
  const Mat3& jacobian() const { return jac_; }
  /// Inverse of jacobian(); throws SingularGeometry for degenerate elements.
  const Mat3& inverse_jacobian() const;

  Point from_reference(const Point& xhat) const;
  Point to_reference(const Point& x) const;

  /// True when x_0 = 0 and x_i = s_i e_i, i.e. K = diag(s)·K̂.
  bool is_axis_squeeze() const;

 private:
  int dim_;
  std::vector<Point> vertices_;
  Mat3 jac_{};
  Mat3 inv_jac_{};
  double volume_ = 0.0;
  double diameter_ = 0.0;
  bool degenerate_ = false;
  bool reoriented_ = false;
};

Simplex reference_simplex(int d);
/// F_α(K̂) for d=2, F_αβ(K̂) for d=3; β ignored when d=2.
Simplex squeeze(int d, double alpha, double beta = 1.0);

/// λ_0..λ_d with Σλ = 1 and Σλ_i x_i = x.
std::vector<double> barycentric(const Simplex& K, const Point& x);
bool contains(const Simplex& K, const Point& x, double tol = 1e-12);

struct LatticeNode {
  MultiIndex index;  // arity d, 0 ≤ |γ| ≤ k; barycentric ((k−|γ|)/k, γ/k)
  Point point;
};

/// Σ^k(K) in graded lexicographic order of the d-variable indices.
std::vector<LatticeNode> lattice_nodes(const Simplex& K, int k);

struct JametOptions {
  double coarse_step = 1e-2;  // radians
  double fine_step = 1e-4;    // radians
  // Snap the grid optimum to the exact equi-angle direction of its active set.
  bool polish = true;
  // geometry_report leaves theta_jamet NaN when false.
  bool enabled = true;
};

struct GeometryReport {
  double h = 0.0;
  double rho = 0.0;
  double R = 0.0;
  double max_angle = 0.0;          // d=3: max(max_face_angle, max_dihedral_angle)
  double max_face_angle = 0.0;     // d=3 only
  double max_dihedral_angle = 0.0; // d=3 only
  double theta_jamet = 0.0;
  double chunkiness = 0.0;         // h/ρ
  double semiregularity = 0.0;     // R/h
  bool degenerate = false;
};

GeometryReport geometry_report(const Simplex& K, const JametOptions& jamet = {});

/// θ_K = min over independent E_d ⊂ E_N of max_ξ min_s ∠(ξ, line e_s).
double jamet_angle(const Simplex& K, const JametOptions& opts = {});

}  // namespace simplexinterp
