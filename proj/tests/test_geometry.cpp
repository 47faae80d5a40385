#include <doctest.h>

#include <cmath>

#include "simplexinterp/errors.hpp"
#include "simplexinterp/geometry.hpp"
#include "support.hpp"

using namespace simplexinterp;
using doctest::Approx;

namespace {

GeometryReport report_no_jamet(const Simplex& K) {
  JametOptions off;
  off.enabled = false;
  return geometry_report(K, off);
}

}  // namespace

TEST_CASE("reference simplices and squeezes") {
  const Simplex t = reference_simplex(2);
  CHECK(t.volume() == Approx(0.5));
  CHECK(t.vertex(1) == Point{1.0, 0.0, 0.0});
  CHECK(t.vertex(2) == Point{0.0, 1.0, 0.0});
  CHECK(reference_simplex(3).volume() == Approx(1.0 / 6.0));

  const Simplex s = squeeze(2, 0.5);
  CHECK(s.vertex(2) == Point{0.0, 0.5, 0.0});
  CHECK(squeeze(2, 1.0).vertices() == t.vertices());

  const Simplex s3 = squeeze(3, 0.5, 0.25);
  CHECK(s3.vertex(1) == Point{1.0, 0.0, 0.0});
  CHECK(s3.vertex(2) == Point{0.0, 0.5, 0.0});
  CHECK(s3.vertex(3) == Point{0.0, 0.0, 0.25});
  CHECK(s3.is_axis_squeeze());
}

TEST_CASE("orientation is normalized and degenerate elements need a flag") {
  const Simplex cw(2, {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}});
  CHECK(cw.reoriented());
  CHECK(cw.volume() > 0.0);
  const std::vector<Point> line{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  CHECK_THROWS_AS(Simplex(2, line), SingularGeometry);
  const Simplex flat(2, line, DegeneracyPolicy::allow);
  CHECK(flat.degenerate());
  CHECK(std::isinf(report_no_jamet(flat).R));
}

TEST_CASE("barycentric coordinates") {
  const Simplex t = reference_simplex(2);
  const auto l = barycentric(t, {0.25, 0.25, 0.0});
  CHECK(l[0] == Approx(0.5));
  CHECK(l[1] == Approx(0.25));
  CHECK(l[2] == Approx(0.25));
  const auto v = barycentric(t, t.vertex(0));
  CHECK(v[0] == Approx(1.0));
  CHECK(v[1] == Approx(0.0));

  testsupport::SplitMix g(11);
  for (int i = 0; i < 20; ++i) {
    const Simplex K = testsupport::random_simplex(g, 2);
    Point c{0, 0, 0};
    for (const auto& x : K.vertices())
      for (int j = 0; j < 2; ++j) c[j] += x[j] / 3.0;
    for (double li : barycentric(K, c)) CHECK(li == Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("lattice nodes") {
  const Simplex t = reference_simplex(2);
  CHECK(lattice_nodes(t, 1).size() == 3);
  const auto n2 = lattice_nodes(t, 2);
  CHECK(n2.size() == 6);
  bool has_mid = false;
  for (const auto& n : n2) has_mid |= (n.point == Point{0.5, 0.5, 0.0});
  CHECK(has_mid);
  CHECK(lattice_nodes(reference_simplex(3), 4).size() == 35);

  testsupport::SplitMix g(5);
  for (int d = 2; d <= 3; ++d) {
    const Simplex K = testsupport::random_simplex(g, d);
    const int k = 4;
    for (const auto& n : lattice_nodes(K, k)) {
      const auto l = barycentric(K, n.point);
      CHECK(l[0] == Approx(static_cast<double>(k - n.index.order()) / k).epsilon(1e-12));
      for (int i = 0; i < d; ++i) CHECK(l[i + 1] == Approx(static_cast<double>(n.index[i]) / k).epsilon(1e-12));
    }
  }
}

TEST_CASE("reference triangle metrics") {
  const auto r = geometry_report(reference_simplex(2));
  CHECK(r.h == Approx(std::sqrt(2.0)));
  CHECK(r.R == Approx(std::sqrt(2.0) / 2.0));
  CHECK(r.rho == Approx((2.0 - std::sqrt(2.0)) / 2.0));
  CHECK(r.max_angle == Approx(M_PI / 2.0));
  CHECK(r.theta_jamet > 0.0);
  CHECK(r.theta_jamet <= M_PI / 2.0);
}

TEST_CASE("obtuse triangle: twice the Jamet angle is the maximum angle") {
  const Simplex K(2, {{0, 0, 0}, {1, 0, 0}, {0.5, 0.05, 0}});
  const auto r = geometry_report(K);
  CHECK(std::abs(2.0 * r.theta_jamet - r.max_angle) <= 1e-3);
}

TEST_CASE("Jamet angle against a ten times finer grid") {
  JametOptions fine;
  fine.coarse_step = 1e-3;
  fine.fine_step = 1e-5;
  fine.polish = false;
  for (int d = 2; d <= 3; ++d) {
    const Simplex K = reference_simplex(d);
    CHECK(std::abs(jamet_angle(K) - jamet_angle(K, fine)) <= 1e-4);
  }
}

TEST_CASE("triangle inradius and circumradius formulas") {
  testsupport::SplitMix g(7);
  for (int i = 0; i < 30; ++i) {
    const Simplex K = testsupport::random_simplex(g, 2, 200.0);
    const auto& v = K.vertices();
    auto len = [](const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); };
    const double a = len(v[1], v[2]), b = len(v[0], v[2]), c = len(v[0], v[1]);
    const auto r = report_no_jamet(K);
    CHECK(testsupport::rel_diff(r.rho, K.volume() / (0.5 * (a + b + c))) <= 1e-12);
    CHECK(testsupport::rel_diff(r.R, a * b * c / (4.0 * K.volume())) <= 1e-12);
    CHECK(r.rho <= r.h / 2.0);
    CHECK(r.h / 2.0 <= r.R * (1.0 + 1e-14));
  }
}

TEST_CASE("squeezed triangles: chunkiness blows up, semiregularity does not") {
  for (int i = 0; i <= 10; ++i) {
    const double alpha = std::ldexp(1.0, -i);
    const auto r = report_no_jamet(squeeze(2, alpha));
    CHECK(r.h == Approx(std::sqrt(1.0 + alpha * alpha)));
    CHECK(r.chunkiness * alpha > 1.0);
    CHECK(r.chunkiness * alpha < 6.0);
    CHECK(r.semiregularity >= 0.5 - 1e-12);
    CHECK(r.semiregularity <= 1.0 / std::sqrt(2.0) + 1e-12);
  }
}

TEST_CASE("reports are invariant under rigid motions") {
  testsupport::SplitMix g(3);
  for (int d = 2; d <= 3; ++d)
    for (int i = 0; i < 5; ++i) {
      const Simplex K = testsupport::random_simplex(g, d);
      const double t = g.uniform(0.0, 2.0 * M_PI);
      const double c = std::cos(t), s = std::sin(t);
      std::vector<Point> moved;
      for (const auto& x : K.vertices()) {
        // Rotation about the last axis, then a shift.
        Point y{c * x[0] - s * x[1] + 0.3, s * x[0] + c * x[1] - 1.1, x[2] + (d == 3 ? 2.0 : 0.0)};
        moved.push_back(y);
      }
      const auto a = geometry_report(K);
      const auto b = geometry_report(Simplex(d, moved));
      CHECK(testsupport::rel_diff(a.h, b.h) <= 1e-10);
      CHECK(testsupport::rel_diff(a.rho, b.rho) <= 1e-10);
      CHECK(testsupport::rel_diff(a.R, b.R) <= 1e-10);
      CHECK(testsupport::rel_diff(a.max_angle, b.max_angle) <= 1e-10);
      CHECK(std::abs(a.theta_jamet - b.theta_jamet) <= 1e-4);
    }
}

TEST_CASE("tetrahedron angles") {
  const auto r = geometry_report(reference_simplex(3));
  CHECK(r.max_face_angle == Approx(M_PI / 2.0));
  CHECK(r.max_dihedral_angle == Approx(M_PI / 2.0));
  CHECK(r.max_angle == Approx(M_PI / 2.0));
}
