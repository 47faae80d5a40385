#include "simplexinterp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "simplexinterp/errors.hpp"

namespace simplexinterp {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one point");
  GaussRule g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Tricomi initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] → [0, 1]; nodes ascending.
    g.nodes[i] = 0.5 * (1.0 - x);
    g.weights[i] = 0.5 * w;
    g.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    g.weights[n - 1 - i] = 0.5 * w;
  }
  return g;
}

QuadratureRule simplex_rule(int d, int exactness) {
  if (d != 2 && d != 3) throw InvalidArgument("quadrature dimension must be 2 or 3");
  if (exactness < 0 || exactness > kMaxQuadratureExactness) {
    throw InvalidArgument("quadrature exactness must lie in [0, " + std::to_string(kMaxQuadratureExactness) + "]");
  }
  QuadratureRule r;
  r.dim = d;
  r.exactness = exactness;
  // Axis j carries the Jacobian power d−1−j; N Gauss points integrate degree 2N−1.
  auto points_for = [&](int jac_power) { return std::max(1, (exactness + jac_power + 2) / 2); };
  if (d == 2) {
    const auto g1 = gauss_legendre(points_for(1));
    const auto g2 = gauss_legendre(points_for(0));
    for (std::size_t i = 0; i < g1.nodes.size(); ++i)
      for (std::size_t j = 0; j < g2.nodes.size(); ++j) {
        const double u = g1.nodes[i], v = g2.nodes[j];
        r.points.push_back({u, (1.0 - u) * v, 0.0});
        r.weights.push_back(g1.weights[i] * g2.weights[j] * (1.0 - u));
      }
  } else {
    const auto g1 = gauss_legendre(points_for(2));
    const auto g2 = gauss_legendre(points_for(1));
    const auto g3 = gauss_legendre(points_for(0));
    for (std::size_t i = 0; i < g1.nodes.size(); ++i)
      for (std::size_t j = 0; j < g2.nodes.size(); ++j)
        for (std::size_t l = 0; l < g3.nodes.size(); ++l) {
          const double u = g1.nodes[i], v = g2.nodes[j], w = g3.nodes[l];
          r.points.push_back({u, (1.0 - u) * v, (1.0 - u) * (1.0 - v) * w});
          r.weights.push_back(g1.weights[i] * g2.weights[j] * g3.weights[l] * (1.0 - u) * (1.0 - u) * (1.0 - v));
        }
  }
  return r;
}

double reference_moment(const MultiIndex& gamma) {
  const int d = static_cast<int>(gamma.arity());
  // γ!/(|γ|+d)! evaluated as a product of ratios to stay in range.
  double r = 1.0;
  int denom = gamma.order() + d;
  std::vector<int> num;
  for (std::size_t i = 0; i < gamma.arity(); ++i)
    for (int k = 2; k <= gamma[i]; ++k) num.push_back(k);
  std::size_t q = 0;
  for (int k = denom; k >= 2; --k) {
    r /= k;
    if (q < num.size()) r *= num[q++];
  }
  for (; q < num.size(); ++q) r *= num[q];
  return r;
}

double certify_rule(const QuadratureRule& rule) {
  double worst = 0.0;
  for (const auto& gamma : enumerate_up_to(rule.dim, rule.exactness)) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      double m = rule.weights[i];
      for (int c = 0; c < rule.dim; ++c) m *= std::pow(rule.points[i][c], gamma[c]);
      s += m;
    }
    const double exact = reference_moment(gamma);
    worst = std::max(worst, std::abs(s - exact) / exact);
  }
  return worst;
}

MappedRule map_rule(const Simplex& K, const QuadratureRule& rule) {
  if (rule.dim != K.dim()) throw InvalidArgument("quadrature rule dimension mismatch");
  MappedRule m;
  const double jac = K.volume() * (K.dim() == 2 ? 2.0 : 6.0);
  m.points.reserve(rule.points.size());
  m.weights.reserve(rule.points.size());
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    m.points.push_back(K.from_reference(rule.points[i]));
    m.weights.push_back(rule.weights[i] * jac);
  }
  return m;
}

std::vector<Simplex> red_refine(const Simplex& K) {
  const auto& v = K.vertices();
  auto mid = [&](int a, int b) {
    return Point{0.5 * (v[a][0] + v[b][0]), 0.5 * (v[a][1] + v[b][1]), 0.5 * (v[a][2] + v[b][2])};
  };
  const auto allow = DegeneracyPolicy::allow;
  if (K.dim() == 2) {
    const Point m01 = mid(0, 1), m02 = mid(0, 2), m12 = mid(1, 2);
    return {Simplex(2, {v[0], m01, m02}, allow), Simplex(2, {m01, v[1], m12}, allow),
            Simplex(2, {m02, m12, v[2]}, allow), Simplex(2, {m12, m02, m01}, allow)};
  }
  const Point m01 = mid(0, 1), m02 = mid(0, 2), m03 = mid(0, 3);
  const Point m12 = mid(1, 2), m13 = mid(1, 3), m23 = mid(2, 3);
  // Four corner tetrahedra plus the inner octahedron split along m02–m13.
  return {Simplex(3, {v[0], m01, m02, m03}, allow), Simplex(3, {m01, v[1], m12, m13}, allow),
          Simplex(3, {m02, m12, v[2], m23}, allow), Simplex(3, {m03, m13, m23, v[3]}, allow),
          Simplex(3, {m01, m02, m03, m13}, allow),  Simplex(3, {m01, m02, m12, m13}, allow),
          Simplex(3, {m02, m03, m13, m23}, allow),  Simplex(3, {m02, m12, m13, m23}, allow)};
}

MappedRule subdivided_rule(const Simplex& K, const QuadratureRule& rule, int levels) {
  if (levels < 0) throw InvalidArgument("subdivision levels must be nonnegative");
  std::vector<Simplex> cells{K};
  for (int l = 0; l < levels; ++l) {
    std::vector<Simplex> next;
    next.reserve(cells.size() * (K.dim() == 2 ? 4 : 8));
    for (const auto& c : cells) {
      auto kids = red_refine(c);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    cells = std::move(next);
  }
  MappedRule out;
  for (const auto& c : cells) {
    auto m = map_rule(c, rule);
    out.points.insert(out.points.end(), m.points.begin(), m.points.end());
    out.weights.insert(out.weights.end(), m.weights.begin(), m.weights.end());
  }
  return out;
}

}  // namespace simplexinterp
