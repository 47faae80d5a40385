#include "simplexinterp/diffquot.hpp"

#include <algorithm>
#include <cmath>

#include "simplexinterp/errors.hpp"
#include "simplexinterp/lagrange.hpp"
#include "simplexinterp/quadrature.hpp"

namespace simplexinterp {

namespace {

void check_pair(const MultiIndex& gamma, const MultiIndex& delta, int k) {
  if (gamma.arity() != delta.arity() || (gamma.arity() != 2 && gamma.arity() != 3)) {
    throw InvalidArgument("anchor and extent must share arity 2 or 3");
  }
  if (k < 1) throw InvalidArgument("lattice order k must be at least 1");
  if (gamma.order() + delta.order() > k) {
    throw OutOfLattice("x_" + gamma.to_string() + " shifted by " + delta.to_string() + " leaves Sigma^" +
                       std::to_string(k));
  }
}

// Every η ≤ δ, lexicographic.
std::vector<MultiIndex> lower_set(const MultiIndex& delta) {
  std::vector<MultiIndex> out;
  MultiIndex eta(delta.arity());
  while (true) {
    out.push_back(eta);
    std::size_t i = delta.arity();
    while (i-- > 0) {
      if (eta[i] < delta[i]) {
        eta.set(i, eta[i] + 1);
        for (std::size_t j = i + 1; j < delta.arity(); ++j) eta.set(j, 0);
        break;
      }
      if (i == 0) return out;
    }
  }
}

RecursiveQuotient recurse(const ScalarField& f, int k, const MultiIndex& gamma, const MultiIndex& delta,
                          const MultiIndex& eta) {
  if (delta.order() == 0) return {f(reference_node(gamma, k)), 0};
  const MultiIndex lower = delta - eta;
  MultiIndex next_eta(delta.arity());
  if (lower.order() > 0) {
    for (std::size_t i = 0; i < lower.arity(); ++i)
      if (lower[i] > 0) {
        next_eta = MultiIndex::unit(lower.arity(), i);
        break;
      }
  }
  const auto hi = recurse(f, k, gamma + eta, lower, next_eta);
  const auto lo = recurse(f, k, gamma, lower, next_eta);
  return {k / static_cast<double>(delta.dot(eta)) * (hi.value - lo.value), 1 + std::max(hi.depth, lo.depth)};
}

}  // namespace

double cardinal_bspline(int n, double x) {
  if (n < 1) throw InvalidArgument("B-spline order must be at least 1");
  if (x < 0.0 || x >= n) return 0.0;
  double s = 0.0;
  for (int j = 0; j <= n && j <= x; ++j) {
    const double t = std::pow(x - j, n - 1) * static_cast<double>(binomial(n, j));
    s += (j % 2 == 0) ? t : -t;
  }
  return s / static_cast<double>(factorial(n - 1));
}

MultiIndex shift_node(const MultiIndex& gamma, const MultiIndex& delta, int k) {
  check_pair(gamma, delta, k);
  return gamma + delta;
}

Point reference_node(const MultiIndex& gamma, int k) {
  Point x{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < gamma.arity(); ++i) x[i] = static_cast<double>(gamma[i]) / k;
  return x;
}

double diff_quotient(const ScalarField& f, int k, const MultiIndex& gamma, const MultiIndex& delta) {
  check_pair(gamma, delta, k);
  const int n = delta.order();
  double s = 0.0;
  for (const auto& eta : lower_set(delta)) {
    const double w = 1.0 / static_cast<double>(eta.factorial() * (delta - eta).factorial());
    const double term = w * f(reference_node(gamma + eta, k));
    s += ((n - eta.order()) % 2 == 0) ? term : -term;
  }
  return std::pow(static_cast<double>(k), n) * s;
}

RecursiveQuotient diff_quotient_recursive(const ScalarField& f, int k, const MultiIndex& gamma,
                                          const MultiIndex& delta, const MultiIndex& eta) {
  check_pair(gamma, delta, k);
  if (eta.arity() != delta.arity() || eta.order() != 1) throw InvalidArgument("eta must be a unit multi-index");
  if (!eta.is_le(delta)) throw InvalidArgument("eta " + eta.to_string() + " is not <= delta " + delta.to_string());
  return recurse(f, k, gamma, delta, eta);
}

bool Box::degenerate() const {
  for (std::size_t i = 0; i < extent.arity(); ++i)
    if (extent[i] == 0) return true;
  return false;
}

Box make_box(int k, const MultiIndex& gamma, const MultiIndex& delta) {
  check_pair(gamma, delta, k);
  return Box{k, gamma, delta};
}

double box_integral(const ScalarField& v, const Box& box, int quad_order) {
  check_pair(box.anchor, box.extent, box.k);
  if (quad_order < 0) throw InvalidArgument("quadrature order must be nonnegative");
  const int d = box.dim();
  // Per-axis nodes and weights; a fixed axis carries one node of weight 1.
  std::vector<std::vector<double>> x(d), w(d);
  for (int i = 0; i < d; ++i) {
    const int n = box.extent[i];
    const double base = static_cast<double>(box.anchor[i]) / box.k;
    if (n == 0) {
      x[i] = {base};
      w[i] = {1.0};
      continue;
    }
    // The weight is polynomial of degree n−1 between integer knots.
    const auto g = gauss_legendre((quad_order + n) / 2 + 1);
    const double inv_fact = 1.0 / static_cast<double>(factorial(n));
    for (int piece = 0; piece < n; ++piece)
      for (std::size_t j = 0; j < g.nodes.size(); ++j) {
        const double s = piece + g.nodes[j];
        x[i].push_back(base + s / box.k);
        w[i].push_back(g.weights[j] * cardinal_bspline(n, s) * inv_fact);
      }
  }
  double total = 0.0;
  Point p{0.0, 0.0, 0.0};
  if (d == 2) {
    for (std::size_t a = 0; a < x[0].size(); ++a)
      for (std::size_t b = 0; b < x[1].size(); ++b) {
        p[0] = x[0][a];
        p[1] = x[1][b];
        total += w[0][a] * w[1][b] * v(p);
      }
  } else {
    for (std::size_t a = 0; a < x[0].size(); ++a)
      for (std::size_t b = 0; b < x[1].size(); ++b)
        for (std::size_t c = 0; c < x[2].size(); ++c) {
          p = {x[0][a], x[1][b], x[2][c]};
          total += w[0][a] * w[1][b] * w[2][c] * v(p);
        }
  }
  return total;
}

double integral_representation_check(const Polynomial& f, int k, const MultiIndex& gamma, const MultiIndex& delta,
                                     int quad_order) {
  const double dq = diff_quotient(f.as_field(), k, gamma, delta);
  const Polynomial df = f.derivative(delta);
  const double bi = box_integral(df.as_field(), make_box(k, gamma, delta), quad_order);
  const double scale = std::max({std::abs(dq), std::abs(bi), df.max_abs_coeff() / delta.factorial()});
  const double diff = std::abs(dq - bi);
  return scale > 0.0 ? diff / scale : diff;
}

std::vector<Box> enumerate_boxes(int k, const MultiIndex& delta) {
  const int d = static_cast<int>(delta.arity());
  if (d != 2 && d != 3) throw InvalidArgument("box extent must have arity 2 or 3");
  if (delta.order() < 1 || delta.order() > k) throw InvalidArgument("boxes need 1 <= |delta| <= k");
  std::vector<Box> out;
  for (const auto& g : enumerate_up_to(d, k - delta.order())) out.push_back(Box{k, g, delta});
  return out;
}

double annihilation_check(const Polynomial& v, int k, int quad_order) {
  const int d = v.dim();
  const Simplex ref = reference_simplex(d);
  const LagrangeBasis basis(ref, k);
  const Polynomial u = v - basis.interpolate(v);
  double scale = 0.0;
  for (const auto& n : basis.nodes()) scale = std::max(scale, std::abs(v(n.point)));
  if (scale == 0.0) scale = 1.0;
  double worst = 0.0;
  for (int order = 1; order <= k; ++order)
    for (const auto& delta : enumerate_order(d, order)) {
      const Polynomial du = u.derivative(delta);
      const auto field = du.as_field();
      for (const auto& box : enumerate_boxes(k, delta))
        worst = std::max(worst, std::abs(box_integral(field, box, quad_order)));
    }
  return worst / scale;
}

BoxMoments box_moment_matrix(int k, const MultiIndex& delta, int quad_order) {
  const int d = static_cast<int>(delta.arity());
  const auto boxes = enumerate_boxes(k, delta);
  const auto exps = monomial_exponents(d, k - delta.order());
  if (boxes.size() != exps.size()) throw NumericalError("box count differs from dim P_{k-|delta|}");
  BoxMoments out{linalg::Matrix(boxes.size(), exps.size()), 0.0};
  for (std::size_t j = 0; j < exps.size(); ++j) {
    const auto field = Polynomial::monomial(exps[j]).as_field();
    for (std::size_t i = 0; i < boxes.size(); ++i) out.matrix(i, j) = box_integral(field, boxes[i], quad_order);
  }
  const auto svd = linalg::jacobi_svd(out.matrix);
  out.sigma_min = svd.singular_values.back();
  return out;
}

}  // namespace simplexinterp
