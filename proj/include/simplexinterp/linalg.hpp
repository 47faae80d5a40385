#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace simplexinterp::linalg {

// Small dense row-major matrix. Sizes in this library stay below ~100.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<double> column(std::size_t j) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  std::vector<double> operator*(std::span<const double> x) const;

  double norm_frobenius() const;
  double norm_1() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// PA = LU with partial pivoting; unit lower L and U packed into `lu`.
struct LuFactorization {
  Matrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

LuFactorization lu_factor(Matrix a);
std::vector<double> lu_solve(const LuFactorization& f, std::span<const double> b);
Matrix lu_inverse(const LuFactorization& f);
/// κ₁(A) = ‖A‖₁‖A⁻¹‖₁; +inf when singular.
double condition_number_1(const Matrix& a);

/// Lower Cholesky factor, or nullopt when a is not numerically positive definite.
std::optional<Matrix> cholesky(const Matrix& a);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, matching `values`
  int sweeps = 0;
};

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm is below
/// tol · ‖A‖_F.
SymmetricEigen jacobi_eigen(Matrix a, double tol = 1e-12, int max_sweeps = 100);

/// A x = λ G x with G symmetric positive definite, via diagonal equilibration,
/// Cholesky of G and Jacobi on L⁻¹AL⁻ᵀ. nullopt when G is not positive
/// definite. Eigenvectors are G-orthonormal.
std::optional<SymmetricEigen> generalized_eigen(const Matrix& a, const Matrix& g, double tol = 1e-12);

struct Svd {
  std::vector<double> singular_values;  // descending
  Matrix v;                             // right singular vectors as columns
};

/// One-sided (Hestenes) Jacobi SVD. Works for any shape; for wide matrices the
/// trailing singular values are zero and the matching columns of v span the
/// null space.
Svd jacobi_svd(const Matrix& a, double tol = 1e-15, int max_sweeps = 200);

}  // namespace simplexinterp::linalg
