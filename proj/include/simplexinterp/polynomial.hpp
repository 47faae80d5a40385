#pragma once

#include <functional>
#include <span>
#include <vector>

#include "simplexinterp/geometry.hpp"
#include "simplexinterp/multiindex.hpp"

namespace simplexinterp {

/// Anything evaluable at a Cartesian point.
using ScalarField = std::function<double(const Point&)>;

/// Highest total degree supported by the monomial tables.
inline constexpr int kMaxPolynomialDegree = 24;

/// Exponents of P_D in graded lexicographic order; a prefix of the table for
/// any larger degree.
std::span<const MultiIndex> monomial_exponents(int d, int degree);

/// Dense polynomial in Cartesian monomials x^a y^b (z^c), coefficients in
/// enumerate_up_to(d, degree_bound) order.
class Polynomial {
 public:
  Polynomial() : Polynomial(2, 0) {}
  Polynomial(int dim, int degree_bound);
  Polynomial(int dim, int degree_bound, std::vector<double> coeffs);

  static Polynomial constant(int dim, double c);
  static Polynomial monomial(const MultiIndex& exponent, double coeff = 1.0);

  int dim() const { return dim_; }
  int degree_bound() const { return degree_; }
  /// Highest order with a nonzero coefficient; -1 for the zero polynomial.
  int effective_degree() const;
  bool is_zero() const;

  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  double coeff(const MultiIndex& exponent) const;
  void set_coeff(const MultiIndex& exponent, double value);
  double max_abs_coeff() const;

  double operator()(const Point& x) const;
  /// Values at many points at once.
  void evaluate(std::span<const Point> points, std::span<double> out) const;

  /// ∂^δ; |δ| above the degree bound gives the zero polynomial.
  Polynomial derivative(const MultiIndex& delta) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);

  /// Same coefficients with a larger degree bound.
  Polynomial widened(int degree_bound) const;
  ScalarField as_field() const;

 private:
  int dim_;
  int degree_;
  std::vector<double> coeffs_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(Polynomial a, double s);
Polynomial operator*(double s, Polynomial a);

Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// x ↦ p(A x + b) for a d×d block A.
Polynomial compose_affine(const Polynomial& p, const Mat3& A, const Point& b);

/// p ∘ F_K⁻¹: a polynomial given in reference coordinates expressed in the
/// Cartesian coordinates of K.
Polynomial push_forward(const Polynomial& reference_poly, const Simplex& K);
/// p ∘ F_K: a polynomial on K expressed in reference coordinates.
Polynomial pull_back(const Polynomial& p, const Simplex& K);

}  // namespace simplexinterp
