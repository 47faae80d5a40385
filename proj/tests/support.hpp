#pragma once

// Seeded generators shared by the unit and acceptance tests. SplitMix64 is
// used here rather than the library's Rng so the tests draw from a stream the
// code under test never sees.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "simplexinterp/geometry.hpp"
#include "simplexinterp/polynomial.hpp"

namespace testsupport {

using simplexinterp::Point;
using simplexinterp::Polynomial;
using simplexinterp::Simplex;

class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * ((next() >> 11) * 0x1.0p-53); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t s_;
};

// Dense polynomial of degree ≤ deg with coefficients in [−1, 1].
inline Polynomial random_poly(SplitMix& g, int d, int deg) {
  Polynomial q(d, deg);
  for (auto& c : q.coeffs()) c = g.uniform(-1.0, 1.0);
  return q;
}

// Uniform point in K via sorted-uniform barycentrics.
inline Point random_point(SplitMix& g, const Simplex& K) {
  const int d = K.dim();
  std::vector<double> cut{0.0, 1.0};
  for (int i = 0; i < d; ++i) cut.push_back(g.uniform());
  std::sort(cut.begin(), cut.end());
  Point x{0.0, 0.0, 0.0};
  for (int i = 0; i <= d; ++i) {
    const double lambda = cut[i + 1] - cut[i];
    for (int c = 0; c < d; ++c) x[c] += lambda * K.vertex(i)[c];
  }
  return x;
}

// Random simplex in [−1, 1]^d with chunkiness below `max_chunkiness`.
inline Simplex random_simplex(SplitMix& g, int d, double max_chunkiness = 12.0) {
  while (true) {
    std::vector<Point> v(d + 1, Point{0.0, 0.0, 0.0});
    for (auto& p : v)
      for (int c = 0; c < d; ++c) p[c] = g.uniform(-1.0, 1.0);
    try {
      Simplex K(d, v);
      simplexinterp::JametOptions off;
      off.enabled = false;
      if (simplexinterp::geometry_report(K, off).chunkiness < max_chunkiness) return K;
    } catch (const std::exception&) {
    }
  }
}

inline double rel_diff(double a, double b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

}  // namespace testsupport
