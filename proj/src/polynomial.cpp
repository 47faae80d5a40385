#include "simplexinterp/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simplexinterp/errors.hpp"

namespace simplexinterp {

namespace {

void check_dim(int d) {
  if (d != 2 && d != 3) throw InvalidArgument("polynomial dimension must be 2 or 3");
}

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxPolynomialDegree) {
    throw InvalidArgument("polynomial degree bound must lie in [0, " + std::to_string(kMaxPolynomialDegree) +
                          "], got " + std::to_string(degree));
  }
}

const std::vector<MultiIndex>& full_table(int d) {
  static const std::vector<MultiIndex> t2 = enumerate_up_to(2, kMaxPolynomialDegree);
  static const std::vector<MultiIndex> t3 = enumerate_up_to(3, kMaxPolynomialDegree);
  return d == 2 ? t2 : t3;
}

}  // namespace

std::span<const MultiIndex> monomial_exponents(int d, int degree) {
  check_dim(d);
  check_degree(degree);
  return std::span<const MultiIndex>(full_table(d)).first(dim_polynomials(d, degree));
}

Polynomial::Polynomial(int dim, int degree_bound) : dim_(dim), degree_(degree_bound) {
  check_dim(dim);
  check_degree(degree_bound);
  coeffs_.assign(dim_polynomials(dim, degree_bound), 0.0);
}

Polynomial::Polynomial(int dim, int degree_bound, std::vector<double> coeffs)
    : Polynomial(dim, degree_bound) {
  if (coeffs.size() != coeffs_.size()) throw InvalidArgument("coefficient count does not match dim P_D");
  coeffs_ = std::move(coeffs);
}

Polynomial Polynomial::constant(int dim, double c) {
  Polynomial p(dim, 0);
  p.coeffs_[0] = c;
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& exponent, double coeff) {
  Polynomial p(static_cast<int>(exponent.arity()), exponent.order());
  p.set_coeff(exponent, coeff);
  return p;
}

int Polynomial::effective_degree() const {
  const auto exps = monomial_exponents(dim_, degree_);
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    if (coeffs_[i] != 0.0) return exps[i].order();
  return -1;
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double Polynomial::coeff(const MultiIndex& exponent) const {
  if (static_cast<int>(exponent.arity()) != dim_) throw InvalidArgument("exponent arity mismatch");
  if (exponent.order() > degree_) return 0.0;
  return coeffs_[graded_rank(exponent)];
}

void Polynomial::set_coeff(const MultiIndex& exponent, double value) {
  if (static_cast<int>(exponent.arity()) != dim_) throw InvalidArgument("exponent arity mismatch");
  if (exponent.order() > degree_) throw InvalidArgument("exponent exceeds polynomial degree bound");
  coeffs_[graded_rank(exponent)] = value;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(const Point& x) const {
  double pw[3][kMaxPolynomialDegree + 1];
  for (int c = 0; c < dim_; ++c) {
    pw[c][0] = 1.0;
    for (int e = 1; e <= degree_; ++e) pw[c][e] = pw[c][e - 1] * x[c];
  }
  const auto exps = monomial_exponents(dim_, degree_);
  double s = 0.0;
  if (dim_ == 2) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * pw[0][exps[i][0]] * pw[1][exps[i][1]];
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      s += coeffs_[i] * pw[0][exps[i][0]] * pw[1][exps[i][1]] * pw[2][exps[i][2]];
  }
  return s;
}

void Polynomial::evaluate(std::span<const Point> points, std::span<double> out) const {
  if (points.size() != out.size()) throw InvalidArgument("evaluate: output size mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = (*this)(points[i]);
}

Polynomial Polynomial::derivative(const MultiIndex& delta) const {
  if (static_cast<int>(delta.arity()) != dim_) throw InvalidArgument("derivative arity mismatch");
  const int order = delta.order();
  if (order > degree_) return Polynomial(dim_, 0);
  Polynomial r(dim_, degree_ - order);
  const auto exps = monomial_exponents(dim_, degree_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0.0 || !delta.is_le(exps[i])) continue;
    const MultiIndex& e = exps[i];
    double f = coeffs_[i];
    for (int c = 0; c < dim_; ++c)
      for (int j = 0; j < delta[c]; ++j) f *= static_cast<double>(e[c] - j);
    r.coeffs_[graded_rank(e - delta)] += f;
  }
  return r;
}

Polynomial Polynomial::widened(int degree_bound) const {
  if (degree_bound < degree_) throw InvalidArgument("widened: degree bound would shrink");
  Polynomial r(dim_, degree_bound);
  std::copy(coeffs_.begin(), coeffs_.end(), r.coeffs_.begin());
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.dim_ != dim_) throw InvalidArgument("polynomial dimension mismatch");
  if (other.degree_ > degree_) *this = widened(other.degree_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.dim_ != dim_) throw InvalidArgument("polynomial dimension mismatch");
  if (other.degree_ > degree_) *this = widened(other.degree_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

ScalarField Polynomial::as_field() const {
  return [p = *this](const Point& x) { return p(x); };
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(Polynomial a, double s) { return a *= s; }
Polynomial operator*(double s, Polynomial a) { return a *= s; }

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("polynomial dimension mismatch");
  const int d = a.dim();
  Polynomial r(d, a.degree_bound() + b.degree_bound());
  const auto ea = monomial_exponents(d, a.degree_bound());
  const auto eb = monomial_exponents(d, b.degree_bound());
  auto rc = r.coeffs();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const double ca = a.coeffs()[i];
    if (ca == 0.0) continue;
    for (std::size_t j = 0; j < eb.size(); ++j) {
      const double cb = b.coeffs()[j];
      if (cb == 0.0) continue;
      rc[graded_rank(ea[i] + eb[j])] += ca * cb;
    }
  }
  return r;
}

Polynomial compose_affine(const Polynomial& p, const Mat3& A, const Point& b) {
  const int d = p.dim();
  const int D = p.degree_bound();
  // Powers of each affine coordinate form ℓ_c(x) = Σ_j A[c][j] x_j + b_c.
  std::vector<std::vector<Polynomial>> powers(d);
  for (int c = 0; c < d; ++c) {
    Polynomial l(d, 1);
    l.set_coeff(MultiIndex::zero(d), b[c]);
    for (int j = 0; j < d; ++j) l.set_coeff(MultiIndex::unit(d, j), A[c][j]);
    powers[c].push_back(Polynomial::constant(d, 1.0));
    for (int e = 1; e <= D; ++e) powers[c].push_back(multiply(powers[c].back(), l));
  }
  Polynomial r(d, D);
  const auto exps = monomial_exponents(d, D);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const double c = p.coeffs()[i];
    if (c == 0.0) continue;
    Polynomial term = powers[0][exps[i][0]];
    for (int q = 1; q < d; ++q) term = multiply(term, powers[q][exps[i][q]]);
    term *= c;
    r += term;
  }
  return r;
}

Polynomial push_forward(const Polynomial& reference_poly, const Simplex& K) {
  const Mat3& inv = K.inverse_jacobian();
  Point shift{0.0, 0.0, 0.0};
  for (int i = 0; i < K.dim(); ++i)
    for (int j = 0; j < K.dim(); ++j) shift[i] -= inv[i][j] * K.vertex(0)[j];
  if (K.is_axis_squeeze()) {
    // Diagonal map: scale coefficients by Π s_c^{-e_c} without expansion.
    Polynomial r = reference_poly;
    const auto exps = monomial_exponents(K.dim(), r.degree_bound());
    auto rc = r.coeffs();
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (int c = 0; c < K.dim(); ++c) rc[i] *= std::pow(inv[c][c], exps[i][c]);
    return r;
  }
  return compose_affine(reference_poly, inv, shift);
}

Polynomial pull_back(const Polynomial& p, const Simplex& K) {
  return compose_affine(p, K.jacobian(), K.vertex(0));
}

}  // namespace simplexinterp
