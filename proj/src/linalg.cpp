#include "simplexinterp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simplexinterp/errors.hpp"

namespace simplexinterp::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("matrix product dimension mismatch");
  Matrix r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const double a = (*this)(i, l);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += a * rhs(l, j);
    }
  return r;
}

std::vector<double> Matrix::operator*(std::span<const double> x) const {
  if (x.size() != cols_) throw InvalidArgument("matrix-vector dimension mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double Matrix::norm_frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::norm_1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

LuFactorization lu_factor(Matrix a) {
  if (a.rows() != a.cols()) throw InvalidArgument("LU requires a square matrix");
  const std::size_t n = a.rows();
  LuFactorization f;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = a(i, k) / a(k, k);
      a(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

std::vector<double> lu_solve(const LuFactorization& f, std::span<const double> b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw InvalidArgument("LU solve dimension mismatch");
  if (f.singular) throw NumericalError("LU solve with a singular matrix");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

Matrix lu_inverse(const LuFactorization& f) {
  const std::size_t n = f.lu.rows();
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const auto col = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

double condition_number_1(const Matrix& a) {
  const auto f = lu_factor(a);
  if (f.singular) return std::numeric_limits<double>::infinity();
  return a.norm_1() * lu_inverse(f).norm_1();
}

std::optional<Matrix> cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("Cholesky requires a square matrix");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) return std::nullopt;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

SymmetricEigen jacobi_eigen(Matrix a, double tol, int max_sweeps) {
  if (a.rows() != a.cols()) throw InvalidArgument("eigenproblem requires a square matrix");
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  const double scale = a.norm_frobenius();
  int sweep = 0;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  while (scale > 0.0 && off_norm() > tol * scale) {
    if (sweep++ >= max_sweeps) throw NumericalError("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = v(k, order[c]);
  }
  return out;
}

std::optional<SymmetricEigen> generalized_eigen(const Matrix& a, const Matrix& g, double tol) {
  const std::size_t n = g.rows();
  if (a.rows() != n || a.cols() != n || g.cols() != n) {
    throw InvalidArgument("generalized eigenproblem dimension mismatch");
  }
  std::vector<double> dscale(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(g(i, i) > 0.0)) return std::nullopt;
    dscale[i] = 1.0 / std::sqrt(g(i, i));
  }
  Matrix as(n, n), gs(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      as(i, j) = a(i, j) * dscale[i] * dscale[j];
      gs(i, j) = g(i, j) * dscale[i] * dscale[j];
    }
  auto l = cholesky(gs);
  if (!l) return std::nullopt;
  const Matrix& L = *l;
  // C = L⁻¹ As L⁻ᵀ by two triangular solves.
  Matrix y(n, n);  // y = L⁻¹ As
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      double s = as(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y(k, j);
      y(i, j) = s / L(i, i);
    }
  Matrix c(n, n);  // c = y L⁻ᵀ  ⇔  L cᵀ = yᵀ
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      double s = y(j, i);
      for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * c(j, k);
      c(j, i) = s / L(i, i);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (c(i, j) + c(j, i));
      c(i, j) = m;
      c(j, i) = m;
    }
  auto eig = jacobi_eigen(std::move(c), tol);
  // x = D L⁻ᵀ z
  Matrix x(n, n);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t i = n; i-- > 0;) {
      double s = eig.vectors(i, col);
      for (std::size_t k = i + 1; k < n; ++k) s -= L(k, i) * x(k, col);
      x(i, col) = s / L(i, i);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t col = 0; col < n; ++col) x(i, col) *= dscale[i];
  eig.vectors = std::move(x);
  return eig;
}

Svd jacobi_svd(const Matrix& a, double tol, int max_sweeps) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix u = a;
  Matrix v = Matrix::identity(n);
  // Columns below this squared norm are numerically zero and never rotated,
  // which keeps rank-deficient inputs from cycling on roundoff.
  const double fro = a.norm_frobenius();
  const double zero_floor = (1e-15 * fro) * (1e-15 * fro);
  bool rotated = true;
  int sweep = 0;
  while (rotated) {
    if (sweep++ >= max_sweeps) throw NumericalError("Jacobi SVD did not converge");
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += u(i, p) * u(i, p);
          beta += u(i, q) * u(i, q);
          gamma += u(i, p) * u(i, q);
        }
        if (alpha <= zero_floor || beta <= zero_floor) continue;
        if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double up = u(i, p);
          const double uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
  }
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += u(i, j) * u(i, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });
  Svd out;
  out.singular_values.resize(n);
  out.v = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.singular_values[c] = sigma[order[c]];
    for (std::size_t i = 0; i < n; ++i) out.v(i, c) = v(i, order[c]);
  }
  return out;
}

}  // namespace simplexinterp::linalg
