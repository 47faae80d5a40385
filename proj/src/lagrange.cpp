#include "simplexinterp/lagrange.hpp"

#include <cmath>
#include <sstream>

#include "simplexinterp/errors.hpp"
#include "simplexinterp/linalg.hpp"

namespace simplexinterp {

namespace {

struct NodalSolve {
  std::vector<Polynomial> basis;
  double condition;
};

// Solves V c_i = e_i at the given nodes with V column-equilibrated.
NodalSolve solve_vandermonde(int d, int k, const std::vector<LatticeNode>& nodes) {
  const auto exps = monomial_exponents(d, k);
  const std::size_t n = exps.size();
  linalg::Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double m = 1.0;
      for (int c = 0; c < d; ++c) m *= std::pow(nodes[i].point[c], exps[j][c]);
      v(i, j) = m;
    }
  }
  std::vector<double> col_scale(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col_scale[j] = std::max(col_scale[j], std::abs(v(i, j)));
    if (col_scale[j] == 0.0) col_scale[j] = 1.0;
    for (std::size_t i = 0; i < n; ++i) v(i, j) /= col_scale[j];
  }
  const auto lu = linalg::lu_factor(v);
  const double cond = lu.singular ? INFINITY : v.norm_1() * linalg::lu_inverse(lu).norm_1();
  if (!(cond <= kVandermondeConditionLimit)) {
    std::ostringstream msg;
    msg << "ill-conditioned element: Vandermonde condition " << cond << " exceeds "
        << kVandermondeConditionLimit << " (k=" << k << ")";
    throw IllConditionedElement(msg.str());
  }
  const auto inv = linalg::lu_inverse(lu);
  NodalSolve out{{}, cond};
  out.basis.reserve(n);
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<double> c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = inv(j, b) / col_scale[j];
    out.basis.emplace_back(d, k, std::move(c));
  }
  return out;
}

}  // namespace

LagrangeBasis::LagrangeBasis(const Simplex& K, int k, BasisRoute route) : K_(K), k_(k), route_(route) {
  if (k < 1 || k > kMaxLagrangeOrder) {
    throw InvalidArgument("Lagrange order k must lie in [1, " + std::to_string(kMaxLagrangeOrder) + "]");
  }
  if (K.degenerate()) throw SingularGeometry("Lagrange basis requested on a degenerate simplex");
  if (route_ == BasisRoute::automatic) {
    route_ = K.is_axis_squeeze() ? BasisRoute::pullback : BasisRoute::vandermonde;
  }
  nodes_ = lattice_nodes(K, k);
  if (route_ == BasisRoute::vandermonde) {
    auto s = solve_vandermonde(K.dim(), k, nodes_);
    basis_ = std::move(s.basis);
    condition_ = s.condition;
  } else {
    const Simplex ref = reference_simplex(K.dim());
    auto s = solve_vandermonde(K.dim(), k, lattice_nodes(ref, k));
    condition_ = s.condition;
    basis_.reserve(s.basis.size());
    for (const auto& b : s.basis) basis_.push_back(push_forward(b, K));
  }
}

Polynomial LagrangeBasis::interpolate(const ScalarField& f) const {
  Polynomial r(K_.dim(), k_);
  auto rc = r.coeffs();
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    const double fj = f(nodes_[j].point);
    const auto bc = basis_[j].coeffs();
    for (std::size_t i = 0; i < rc.size(); ++i) rc[i] += fj * bc[i];
  }
  return r;
}

Polynomial LagrangeBasis::interpolate(const Polynomial& f) const {
  return interpolate([&f](const Point& x) { return f(x); });
}

LagrangeBasis lagrange_basis(const Simplex& K, int k, BasisRoute route) { return LagrangeBasis(K, k, route); }

Polynomial interpolate(const Simplex& K, int k, const ScalarField& f) { return LagrangeBasis(K, k).interpolate(f); }

}  // namespace simplexinterp
