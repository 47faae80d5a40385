#include <doctest.h>

#include <set>

#include "simplexinterp/errors.hpp"
#include "simplexinterp/multiindex.hpp"

using namespace simplexinterp;

TEST_CASE("enumerate_order small cases") {
  const auto z = enumerate_order(2, 0);
  REQUIRE(z.size() == 1);
  CHECK(z[0] == MultiIndex{0, 0});

  const auto two = enumerate_order(2, 2);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == MultiIndex{0, 2});
  CHECK(two[1] == MultiIndex{1, 1});
  CHECK(two[2] == MultiIndex{2, 0});

  CHECK(enumerate_order(3, 2).size() == 6);
}

TEST_CASE("enumerate_order count, distinctness and order") {
  for (int d = 1; d <= 4; ++d)
    for (int m = 0; m <= 10; ++m) {
      const auto all = enumerate_order(d, m);
      CHECK(all.size() == binomial(m + d - 1, d - 1));
      std::set<MultiIndex> seen(all.begin(), all.end());
      CHECK(seen.size() == all.size());
      for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].order() == m);
        if (i) CHECK(all[i - 1] < all[i]);
      }
    }
}

TEST_CASE("graded enumeration and rank agree") {
  for (int d = 2; d <= 3; ++d) {
    const auto all = enumerate_up_to(d, 7);
    CHECK(all.size() == dim_polynomials(d, 7));
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(graded_rank(all[i]) == i);
  }
}

TEST_CASE("multinomial weights") {
  CHECK(multinomial_weight(2, {1, 1}) == 2);
  CHECK(multinomial_weight(3, {2, 1}) == 3);
  CHECK(multinomial_weight(4, {2, 1, 1}) == 12);
  CHECK_THROWS_AS(multinomial_weight(3, {1, 1}), InvalidArgument);
}

TEST_CASE("multinomial theorem at all-ones") {
  for (int d = 2; d <= 3; ++d)
    for (int m = 0; m <= 10; ++m) {
      std::uint64_t s = 0, p = 1;
      for (const auto& g : enumerate_order(d, m)) s += multinomial_weight(m, g);
      for (int i = 0; i < m; ++i) p *= static_cast<std::uint64_t>(d);
      CHECK(s == p);
    }
}

TEST_CASE("factorials stay exact through order 12") {
  CHECK(factorial(12) == 479001600ULL);
  CHECK(MultiIndex{6, 6}.factorial() == 720ULL * 720ULL);
  CHECK(factorial(20) == 2432902008176640000ULL);
  CHECK_THROWS_AS(factorial(21), InvalidArgument);
}

TEST_CASE("split identity") {
  CHECK(split_identity_check({1, 1}, 1));
  CHECK(split_identity_check({2, 1}, 1));
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= 9; ++n)
      for (const auto& delta : enumerate_order(d, n))
        for (int m = 0; m < n; ++m) CHECK(split_identity_check(delta, m));
  CHECK_FALSE(split_identity_check({1, 1}, 3));
}

TEST_CASE("multi-index arithmetic") {
  const MultiIndex a{2, 1, 0};
  const MultiIndex b{1, 1, 0};
  CHECK((a - b) == MultiIndex{1, 0, 0});
  CHECK((a + b).order() == 5);
  CHECK(b.is_le(a));
  CHECK_FALSE(a.is_le(b));
  CHECK(a.dot(b) == 3);
  CHECK_THROWS_AS(b - a, InvalidArgument);
  CHECK_THROWS_AS(MultiIndex(2).set(0, -1), InvalidArgument);
  CHECK(a.to_string() == "(2,1,0)");
}
