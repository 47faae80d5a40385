#include <doctest.h>

#include <cmath>

#include "simplexinterp/diffquot.hpp"
#include "simplexinterp/errors.hpp"
#include "simplexinterp/lagrange.hpp"
#include "support.hpp"

using namespace simplexinterp;
using doctest::Approx;

TEST_CASE("node shifts") {
  CHECK(shift_node({0, 0}, {1, 1}, 2) == MultiIndex{1, 1});
  CHECK(shift_node({1, 0}, {0, 1}, 2) == MultiIndex{1, 1});
  CHECK_THROWS_AS(shift_node({1, 1}, {1, 0}, 2), OutOfLattice);
}

TEST_CASE("difference quotient examples") {
  const int k = 3;
  testsupport::SplitMix g(1);
  const Polynomial f = testsupport::random_poly(g, 2, 5);
  auto at = [&](int i, int j) { return f(reference_node({i, j}, k)); };
  CHECK(diff_quotient(f.as_field(), k, {0, 0}, {1, 1}) ==
        Approx(k * k * (at(1, 1) - at(1, 0) - at(0, 1) + at(0, 0))));
  CHECK(diff_quotient(f.as_field(), k, {0, 0}, {2, 0}) == Approx(k * k / 2.0 * (at(2, 0) - 2 * at(1, 0) + at(0, 0))));
  CHECK(diff_quotient(f.as_field(), k, {0, 0}, {2, 1}) ==
        Approx(k * k * k / 2.0 *
               (at(2, 1) - 2 * at(1, 1) + at(0, 1) - at(2, 0) + 2 * at(1, 0) - at(0, 0))));

  for (int kk = 2; kk <= 6; ++kk) {
    CHECK(diff_quotient(Polynomial::monomial({1, 1}).as_field(), kk, {0, 0}, {1, 1}) == Approx(1.0));
    CHECK(diff_quotient(Polynomial::monomial({2, 0}).as_field(), kk, {0, 0}, {2, 0}) == Approx(1.0));
  }

  // d = 3, δ = (2,1,1): the twelve-term sum.
  const Polynomial h = testsupport::random_poly(g, 3, 6);
  auto at3 = [&](int i, int j, int l) { return h(reference_node({i, j, l}, 4)); };
  const double twelve = std::pow(4.0, 4) / 2.0 *
                        (at3(2, 1, 1) - 2 * at3(1, 1, 1) + at3(0, 1, 1) - at3(2, 0, 1) + 2 * at3(1, 0, 1) -
                         at3(0, 0, 1) - at3(2, 1, 0) + 2 * at3(1, 1, 0) - at3(0, 1, 0) + at3(2, 0, 0) -
                         2 * at3(1, 0, 0) + at3(0, 0, 0));
  CHECK(diff_quotient(h.as_field(), 4, {0, 0, 0}, {2, 1, 1}) == Approx(twelve).epsilon(1e-12));
}

TEST_CASE("recursion") {
  testsupport::SplitMix g(2);
  const Polynomial f = testsupport::random_poly(g, 2, 4);
  const auto r1 = diff_quotient_recursive(f.as_field(), 4, {1, 2}, {0, 1}, {0, 1});
  CHECK(r1.value == Approx(4.0 * (f(reference_node({1, 3}, 4)) - f(reference_node({1, 2}, 4)))));
  CHECK(r1.depth == 1);
  CHECK(diff_quotient_recursive(f.as_field(), 4, {0, 0}, {2, 1}, {1, 0}).depth == 3);
  CHECK_THROWS_AS(diff_quotient_recursive(f.as_field(), 4, {0, 0}, {2, 0}, {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(diff_quotient_recursive(f.as_field(), 4, {0, 0}, {2, 0}, {1, 1}), InvalidArgument);

  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 5; ++k) {
      const Polynomial h = testsupport::random_poly(g, d, 7);
      const auto field = h.as_field();
      for (int n = 1; n <= k; ++n)
        for (const auto& delta : enumerate_order(d, n))
          for (const auto& gamma : enumerate_up_to(d, k - n))
            for (int i = 0; i < d; ++i) {
              if (delta[i] == 0) continue;
              const double a = diff_quotient(field, k, gamma, delta);
              const double b = diff_quotient_recursive(field, k, gamma, delta, MultiIndex::unit(d, i)).value;
              const double scale = std::max(std::abs(a), h.derivative(delta).max_abs_coeff() / delta.factorial());
              CHECK(std::abs(a - b) <= 1e-12 * scale);
            }
    }
}

TEST_CASE("quotients annihilate low degree and see constant derivatives exactly") {
  testsupport::SplitMix g(3);
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= 4; ++n)
      for (const auto& delta : enumerate_order(d, n)) {
        const Polynomial low = testsupport::random_poly(g, d, n - 1);
        CHECK(std::abs(diff_quotient(low.as_field(), 4, MultiIndex(d), delta)) <= 1e-12 * std::pow(4.0, n));
        const Polynomial top = Polynomial::monomial(delta, 1.7) + low;
        CHECK(diff_quotient(top.as_field(), 4, MultiIndex(d), delta) == Approx(1.7).epsilon(1e-12));
      }
}

TEST_CASE("box integrals") {
  const auto one = Polynomial::constant(2, 1.0).as_field();
  CHECK(box_integral(one, make_box(4, {0, 0}, {2, 1}), 0) == Approx(0.5));
  CHECK(box_integral(one, make_box(6, {1, 0}, {3, 2}), 0) == Approx(1.0 / 12.0));
  CHECK(box_integral(Polynomial::constant(3, 2.5).as_field(), make_box(5, {0, 1, 0}, {2, 0, 2}), 0) ==
        Approx(2.5 / 4.0));
  CHECK(make_box(4, {0, 0}, {2, 0}).degenerate());
  CHECK_FALSE(make_box(4, {0, 0}, {1, 1}).degenerate());

  // Segment box: ∫₀¹ v(l/k, q/k + w/k) dw = k ∫ v(l/k, y) dy over [q/k, (q+1)/k].
  const Polynomial v = Polynomial::monomial({1, 2}) + Polynomial::monomial({0, 3});
  const double k = 5.0, x = 1.0 / k, y0 = 2.0 / k, y1 = 3.0 / k;
  auto antider = [&](double y) { return x * y * y * y / 3.0 + y * y * y * y / 4.0; };
  CHECK(box_integral(v.as_field(), make_box(5, {1, 2}, {0, 1}), 3) == Approx(k * (antider(y1) - antider(y0))));
}

TEST_CASE("cardinal B-spline weights") {
  for (int n = 1; n <= 6; ++n) {
    double s = 0.0;
    const int steps = 20000;
    for (int i = 0; i < steps; ++i) s += cardinal_bspline(n, n * (i + 0.5) / steps) * n / steps;
    CHECK(s == Approx(1.0).epsilon(1e-6));
    CHECK(cardinal_bspline(n, -0.1) == 0.0);
    CHECK(cardinal_bspline(n, n + 0.1) == 0.0);
  }
  CHECK(cardinal_bspline(2, 1.0) == Approx(1.0));
  CHECK(cardinal_bspline(3, 1.5) == Approx(0.75));
}

TEST_CASE("integral representation") {
  // Degree |δ| with constant ∂^δ f: both sides c/δ!.
  const Polynomial f = Polynomial::monomial({2, 1}, 3.0) + Polynomial::monomial({1, 0});
  CHECK(integral_representation_check(f, 4, {0, 1}, {2, 1}, 0) <= 1e-13);
  CHECK(diff_quotient(f.as_field(), 4, {0, 1}, {2, 1}) == Approx(3.0));

  testsupport::SplitMix g(4);
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 5; ++k) {
      const Polynomial h = testsupport::random_poly(g, d, 8);
      for (int n = 1; n <= k; ++n)
        for (const auto& delta : enumerate_order(d, n))
          for (const auto& gamma : enumerate_up_to(d, k - n))
            CHECK(integral_representation_check(h, k, gamma, delta, 8 - n) <= 1e-9);
    }
}

TEST_CASE("annihilation of interpolation residuals") {
  testsupport::SplitMix g(5);
  CHECK(annihilation_check(testsupport::random_poly(g, 2, 3), 3, 3) <= 1e-12);
  CHECK(annihilation_check(Polynomial::monomial({3, 0}), 2, 3) <= 1e-9);
  CHECK(annihilation_check(testsupport::random_poly(g, 3, 5), 2, 5) <= 1e-8);
  // A non-residual does not pass: x^{k+1} itself.
  const int k = 2;
  const Polynomial v = Polynomial::monomial({k + 1, 0});
  const auto field = v.derivative({1, 0}).as_field();
  CHECK(std::abs(box_integral(field, make_box(k, {0, 0}, {1, 0}), 3)) > 1e-3);
}

TEST_CASE("box counts and moment matrices") {
  CHECK(enumerate_boxes(4, {1, 1}).size() == 6);
  CHECK(enumerate_boxes(4, {2, 0}).size() == 6);
  CHECK(enumerate_boxes(2, {1, 1, 0}).size() == 1);
  CHECK(enumerate_boxes(3, {1, 1, 0}).size() == 4);
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 4; ++k)
      for (int n = 1; n <= k; ++n)
        for (const auto& delta : enumerate_order(d, n)) {
          CHECK(enumerate_boxes(k, delta).size() == binomial(k - n + d, d));
          const auto bm = box_moment_matrix(k, delta, 2 * k);
          CHECK(bm.matrix.rows() == bm.matrix.cols());
          CHECK(bm.sigma_min > 1e-8);
        }
  const auto single = box_moment_matrix(2, {1, 1}, 0);
  REQUIRE(single.matrix.rows() == 1);
  CHECK(single.matrix(0, 0) == Approx(1.0));
}
