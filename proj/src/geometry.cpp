#include "simplexinterp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "simplexinterp/errors.hpp"

namespace simplexinterp {

namespace {

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Point& a) { return std::sqrt(dot(a, a)); }
Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Point scaled(const Point& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

double det(const Mat3& m, int d) {
  if (d == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse(const Mat3& m, int d) {
  const double D = det(m, d);
  Mat3 r{};
  if (d == 2) {
    r[0][0] = m[1][1] / D;
    r[0][1] = -m[0][1] / D;
    r[1][0] = -m[1][0] / D;
    r[1][1] = m[0][0] / D;
    return r;
  }
  r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / D;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / D;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / D;
  r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / D;
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / D;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / D;
  r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / D;
  r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / D;
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / D;
  return r;
}

Mat3 edge_matrix(const std::vector<Point>& v, int d) {
  Mat3 m{};
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) m[i][j] = v[j + 1][i] - v[0][i];
  return m;
}

double angle_between(const Point& a, const Point& b) {
  const double c = dot(a, b) / (norm(a) * norm(b));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

Simplex::Simplex(int dim, std::vector<Point> vertices, DegeneracyPolicy policy)
    : dim_(dim), vertices_(std::move(vertices)) {
  if (dim_ != 2 && dim_ != 3) throw InvalidArgument("simplex dimension must be 2 or 3");
  if (vertices_.size() != static_cast<std::size_t>(dim_ + 1)) {
    throw InvalidArgument("a " + std::to_string(dim_) + "-simplex needs " + std::to_string(dim_ + 1) +
                          " vertices, got " + std::to_string(vertices_.size()));
  }
  for (auto& v : vertices_) {
    for (int c = dim_; c < 3; ++c) v[c] = 0.0;
    for (double x : v)
      if (!std::isfinite(x)) throw InvalidArgument("simplex vertices must be finite");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      diameter_ = std::max(diameter_, norm(sub(vertices_[i], vertices_[j])));

  jac_ = edge_matrix(vertices_, dim_);
  double signed_det = det(jac_, dim_);
  if (signed_det < 0.0) {
    std::swap(vertices_[dim_ - 1], vertices_[dim_]);
    reoriented_ = true;
    jac_ = edge_matrix(vertices_, dim_);
    signed_det = det(jac_, dim_);
  }
  volume_ = signed_det / (dim_ == 2 ? 2.0 : 6.0);
  degenerate_ = !(volume_ >= 1e-14 * std::pow(diameter_, dim_)) || diameter_ == 0.0;
  if (degenerate_ && policy == DegeneracyPolicy::reject) {
    throw SingularGeometry("degenerate simplex: volume " + std::to_string(volume_) + " below 1e-14*h^d");
  }
  if (signed_det != 0.0) inv_jac_ = inverse(jac_, dim_);
}

const Mat3& Simplex::inverse_jacobian() const {
  if (degenerate_) throw SingularGeometry("inverse map requested on a degenerate simplex");
  return inv_jac_;
}

Point Simplex::from_reference(const Point& xhat) const {
  Point x = vertices_[0];
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) x[i] += jac_[i][j] * xhat[j];
  return x;
}

Point Simplex::to_reference(const Point& x) const {
  const Mat3& inv = inverse_jacobian();
  const Point r = sub(x, vertices_[0]);
  Point xhat{0.0, 0.0, 0.0};
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) xhat[i] += inv[i][j] * r[j];
  return xhat;
}

bool Simplex::is_axis_squeeze() const {
  for (int c = 0; c < dim_; ++c)
    if (vertices_[0][c] != 0.0) return false;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j && jac_[i][j] != 0.0) return false;
  return true;
}

Simplex reference_simplex(int d) {
  if (d == 2) return Simplex(2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  if (d == 3) return Simplex(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  throw InvalidArgument("reference simplex dimension must be 2 or 3");
}

Simplex squeeze(int d, double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("squeeze alpha must lie in (0, 1]");
  if (d == 2) return Simplex(2, {{0, 0, 0}, {1, 0, 0}, {0, alpha, 0}});
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("squeeze beta must lie in (0, 1]");
  if (d == 3) return Simplex(3, {{0, 0, 0}, {1, 0, 0}, {0, alpha, 0}, {0, 0, beta}});
  throw InvalidArgument("squeeze dimension must be 2 or 3");
}

std::vector<double> barycentric(const Simplex& K, const Point& x) {
  const Point xhat = K.to_reference(x);
  std::vector<double> lambda(K.dim() + 1);
  double rest = 1.0;
  for (int i = 0; i < K.dim(); ++i) {
    lambda[i + 1] = xhat[i];
    rest -= xhat[i];
  }
  lambda[0] = rest;
  return lambda;
}

bool contains(const Simplex& K, const Point& x, double tol) {
  for (double l : barycentric(K, x))
    if (l < -tol || l > 1.0 + tol) return false;
  return true;
}

std::vector<LatticeNode> lattice_nodes(const Simplex& K, int k) {
  if (k < 1) throw InvalidArgument("lattice order k must be >= 1");
  std::vector<LatticeNode> nodes;
  for (const auto& gamma : enumerate_up_to(K.dim(), k)) {
    Point xhat{0.0, 0.0, 0.0};
    for (int i = 0; i < K.dim(); ++i) xhat[i] = static_cast<double>(gamma[i]) / k;
    nodes.push_back({gamma, K.from_reference(xhat)});
  }
  return nodes;
}

namespace {

struct EdgeSubset {
  std::vector<Point> dirs;  // unit vectors
  Mat3 inv_t{};             // (Eᵀ)⁻¹ with E holding dirs as columns
};

double subset_value(const EdgeSubset& s, const Point& xi) {
  double g = 0.0;
  for (const auto& e : s.dirs) g = std::max(g, std::abs(dot(xi, e)));
  return g;
}

// Exact optimum of the active set containing xi: all |ξ·e_s| equal.
double polish(const EdgeSubset& s, const Point& xi, int d) {
  Point sigma{0.0, 0.0, 0.0};
  for (int i = 0; i < d; ++i) sigma[i] = dot(xi, s.dirs[i]) < 0.0 ? -1.0 : 1.0;
  Point y{0.0, 0.0, 0.0};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) y[i] += s.inv_t[i][j] * sigma[j];
  const double n = norm(y);
  if (!(n > 0.0)) return std::numeric_limits<double>::infinity();
  return subset_value(s, scaled(y, 1.0 / n));
}

double refine_2d(const EdgeSubset& s, double phi0, const JametOptions& o) {
  double best = std::numeric_limits<double>::infinity();
  const int steps = static_cast<int>(std::ceil(o.coarse_step / o.fine_step));
  for (int i = -steps; i <= steps; ++i) {
    const double phi = phi0 + i * o.fine_step;
    best = std::min(best, subset_value(s, {std::cos(phi), std::sin(phi), 0.0}));
  }
  return best;
}

}  // namespace

double jamet_angle(const Simplex& K, const JametOptions& opts) {
  if (!(opts.coarse_step > 0.0 && opts.fine_step > 0.0 && opts.fine_step <= opts.coarse_step)) {
    throw InvalidArgument("Jamet grid steps must satisfy 0 < fine <= coarse");
  }
  const int d = K.dim();
  std::vector<Point> edges;
  for (int i = 0; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) {
      const Point e = sub(K.vertex(j), K.vertex(i));
      const double n = norm(e);
      if (n > 0.0) edges.push_back(scaled(e, 1.0 / n));
    }

  std::vector<EdgeSubset> subsets;
  const std::size_t ne = edges.size();
  auto add_subset = [&](std::vector<Point> dirs) {
    Mat3 et{};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) et[i][j] = dirs[i][j];  // row i = e_i
    if (std::abs(det(et, d)) < 1e-10) return;
    subsets.push_back({std::move(dirs), inverse(et, d)});
  };
  if (d == 2) {
    for (std::size_t a = 0; a < ne; ++a)
      for (std::size_t b = a + 1; b < ne; ++b) add_subset({edges[a], edges[b]});
  } else {
    for (std::size_t a = 0; a < ne; ++a)
      for (std::size_t b = a + 1; b < ne; ++b)
        for (std::size_t c = b + 1; c < ne; ++c) add_subset({edges[a], edges[b], edges[c]});
  }
  if (subsets.empty()) return std::numeric_limits<double>::quiet_NaN();

  // Minimise g(ξ) = max_s |ξ·e_s| per subset; θ(E_d) = acos(min g), and the
  // smallest θ(E_d) belongs to the largest min g.
  double best_g = 0.0;
  if (d == 2) {
    const int n = static_cast<int>(std::ceil(std::numbers::pi / opts.coarse_step));
    for (const auto& s : subsets) {
      double g0 = std::numeric_limits<double>::infinity();
      double phi0 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double phi = i * opts.coarse_step;
        const double g = subset_value(s, {std::cos(phi), std::sin(phi), 0.0});
        if (g < g0) {
          g0 = g;
          phi0 = phi;
        }
      }
      double g = std::min(g0, refine_2d(s, phi0, opts));
      if (opts.polish) g = std::min(g, polish(s, {std::cos(phi0), std::sin(phi0), 0.0}, 2));
      best_g = std::max(best_g, g);
    }
  } else {
    // Spherical Fibonacci grid with mean spacing ≈ coarse_step.
    const auto n = static_cast<std::size_t>(std::ceil(4.0 * std::numbers::pi / (opts.coarse_step * opts.coarse_step)));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<double> g0(subsets.size(), std::numeric_limits<double>::infinity());
    std::vector<Point> xi0(subsets.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(i);
      const Point xi{r * std::cos(phi), r * std::sin(phi), z};
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        const double g = subset_value(subsets[s], xi);
        if (g < g0[s]) {
          g0[s] = g;
          xi0[s] = xi;
        }
      }
    }
    const int steps = static_cast<int>(std::ceil(opts.coarse_step / opts.fine_step));
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      const Point& c = xi0[s];
      const Point helper = std::abs(c[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
      Point t1 = cross(c, helper);
      t1 = scaled(t1, 1.0 / norm(t1));
      const Point t2 = cross(c, t1);
      double g = g0[s];
      Point arg = c;
      for (int a = -steps; a <= steps; ++a)
        for (int b = -steps; b <= steps; ++b) {
          Point p = c;
          for (int q = 0; q < 3; ++q) p[q] += a * opts.fine_step * t1[q] + b * opts.fine_step * t2[q];
          p = scaled(p, 1.0 / norm(p));
          const double v = subset_value(subsets[s], p);
          if (v < g) {
            g = v;
            arg = p;
          }
        }
      if (opts.polish) g = std::min(g, polish(subsets[s], arg, 3));
      best_g = std::max(best_g, g);
    }
  }
  return std::acos(std::clamp(best_g, 0.0, 1.0));
}

GeometryReport geometry_report(const Simplex& K, const JametOptions& jamet) {
  const int d = K.dim();
  const auto& v = K.vertices();
  GeometryReport r;
  r.h = K.diameter();
  r.degenerate = K.degenerate();

  double facet_measure = 0.0;
  if (d == 2) {
    for (int i = 0; i < 3; ++i) facet_measure += norm(sub(v[(i + 1) % 3], v[(i + 2) % 3]));
  } else {
    for (int skip = 0; skip < 4; ++skip) {
      std::vector<Point> f;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f.push_back(v[i]);
      facet_measure += 0.5 * norm(cross(sub(f[1], f[0]), sub(f[2], f[0])));
    }
  }
  const double vol = std::max(K.volume(), 0.0);
  r.rho = facet_measure > 0.0 ? d * vol / facet_measure : 0.0;

  // Circumcentre c' relative to x_0 solves 2 Bᵀ c' = (|x_i − x_0|²)_i.
  const Mat3& B = K.jacobian();
  const double D = det(B, d);
  if (D != 0.0 && !K.degenerate()) {
    Mat3 bt{};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) bt[i][j] = B[j][i];
    const Mat3 inv = inverse(bt, d);
    Point rhs{0.0, 0.0, 0.0};
    for (int i = 0; i < d; ++i) {
      const Point e = sub(v[i + 1], v[0]);
      rhs[i] = 0.5 * dot(e, e);
    }
    Point c{0.0, 0.0, 0.0};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) c[i] += inv[i][j] * rhs[j];
    r.R = norm(c);
  } else {
    r.R = std::numeric_limits<double>::infinity();
  }

  if (d == 2) {
    for (int i = 0; i < 3; ++i) {
      r.max_angle = std::max(r.max_angle, angle_between(sub(v[(i + 1) % 3], v[i]), sub(v[(i + 2) % 3], v[i])));
    }
    r.max_face_angle = r.max_angle;
  } else {
    for (int skip = 0; skip < 4; ++skip) {
      std::vector<Point> f;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f.push_back(v[i]);
      for (int i = 0; i < 3; ++i) {
        r.max_face_angle =
            std::max(r.max_face_angle, angle_between(sub(f[(i + 1) % 3], f[i]), sub(f[(i + 2) % 3], f[i])));
      }
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        int others[2];
        int n = 0;
        for (int q = 0; q < 4; ++q)
          if (q != i && q != j) others[n++] = q;
        Point u = sub(v[j], v[i]);
        u = scaled(u, 1.0 / norm(u));
        Point a = sub(v[others[0]], v[i]);
        Point b = sub(v[others[1]], v[i]);
        a = sub(a, scaled(u, dot(a, u)));
        b = sub(b, scaled(u, dot(b, u)));
        if (norm(a) > 0.0 && norm(b) > 0.0) r.max_dihedral_angle = std::max(r.max_dihedral_angle, angle_between(a, b));
      }
    r.max_angle = std::max(r.max_face_angle, r.max_dihedral_angle);
  }

  r.theta_jamet = jamet.enabled ? jamet_angle(K, jamet) : std::numeric_limits<double>::quiet_NaN();
  r.chunkiness = r.rho > 0.0 ? r.h / r.rho : std::numeric_limits<double>::infinity();
  r.semiregularity = r.h > 0.0 ? r.R / r.h : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace simplexinterp
