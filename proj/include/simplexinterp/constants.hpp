#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "simplexinterp/geometry.hpp"
#include "simplexinterp/multiindex.hpp"
#include "simplexinterp/polynomial.hpp"

namespace simplexinterp {

enum class ConstantTarget { B, A };
enum class EstimateMethod { rayleigh, sampling };

std::string to_string(ConstantTarget t);
std::string to_string(EstimateMethod m);
EstimateMethod parse_method(const std::string& text);

struct TracePoint {
  int r = 0;
  double value = 0.0;
};

/// A lower bound for B_p^{m,k}(K) or A_p^{δ,k}: the supremum of the defining
/// ratio over a finite probe set.
struct ConstantEstimate {
  double value = 0.0;
  ConstantTarget target = ConstantTarget::B;
  EstimateMethod method = EstimateMethod::rayleigh;
  int d = 2;
  int k = 1;
  int m = 0;              // B only
  MultiIndex delta;       // A only
  double p = 2.0;
  std::string simplex;    // descriptor of K (A: always K̂)
  int r = 1;
  int exactness = 0;
  std::uint64_t seed = 0;
  bool theory_valid = true;
  /// (r', value) for r' = 1..r; nondecreasing.
  std::vector<TracePoint> trace;
  /// Sampling: index of the probe attaining the max, probes skipped because
  /// they lie in P_k, and the quadrature error estimate of the attaining ratio.
  int attaining_probe = -1;
  int skipped_probes = 0;
  double error_estimate = 0.0;
  /// A: largest box integral of a null-space probe.
  double constraint_residual = 0.0;
};

/// Polynomials on K together with the probe excess degree each was drawn
/// from (degree ≤ k + excess).
struct ProbeFamily {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<Polynomial> probes;
  std::vector<int> excess;

  /// Monomials of P((x − x_0)/h_K) with degrees k+1..k+r, followed by
  /// `random_count` combinations with coefficients uniform in [−1, 1], the
  /// i-th of excess 1 + (i mod r). Homogeneous under scaling of K.
  static ProbeFamily isotropic(const Simplex& K, int k, int r, int random_count, std::uint64_t seed);
  /// Same construction in reference coordinates, pushed forward by F_K.
  static ProbeFamily reference(const Simplex& K, int k, int r, int random_count, std::uint64_t seed);

  /// Appends the `count` leading maximizers of the p = 2 Rayleigh quotient
  /// for (k, m) over degrees k+1..k+r, scaled to unit max coefficient.
  /// Random probes rarely come close to these for m near k.
  void add_extremals(const Simplex& K, int k, int m, int r, int count);
};

/// Seeded uniform doubles in [lo, hi). mt19937_64 output is fixed by the
/// standard; the distribution is done here so results match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

/// Σ c_e x^e over degrees lo..hi, c_e uniform in [−1, 1], graded order.
Polynomial random_polynomial(int d, int lo, int hi, Rng& rng);

/// Rayleigh-quotient lower bound for B_2^{m,k}(K) over residuals of
/// monomials of degree k+1..k+r'. Generalized eigenproblem by Cholesky and
/// Jacobi; exactness 0 picks 2(k+r'). A failing Cholesky is retried once with
/// exactness raised by 4, then NumericalError.
ConstantEstimate estimate_B_rayleigh(const Simplex& K, int k, int m, int r, int exactness = 0,
                                     const std::string& descriptor = "");

/// Leading generalized eigenvectors of the Rayleigh problem as polynomials on K.
std::vector<Polynomial> rayleigh_extremal_probes(const Simplex& K, int k, int m, int r, int count);

/// max over probes of |v − Iv|_{m,p,K}/|v|_{k+1,p,K}; probes in P_k skipped.
ConstantEstimate estimate_B_sampling(const Simplex& K, int k, int m, double p, const ProbeFamily& family,
                                     const std::string& descriptor = "");

/// Lower bound for A_p^{δ,k} over the null space of the box constraints in
/// P_{k−|δ|+r'}, r' = 1..r. p = 2 uses the eigenproblem; other p sample the
/// null-space basis plus `random_count` seeded combinations per r'.
/// r = 0 throws InsufficientProbeSpace.
ConstantEstimate estimate_A(const MultiIndex& delta, int k, double p, int r, int random_count = 64,
                            std::uint64_t seed = 0);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct SqueezeRow {
  double alpha = 1.0;
  double beta = 1.0;
  double chunkiness = 0.0;
  ConstantEstimate estimate;
  /// Slope over rows 0..i; absent for the first row.
  std::optional<double> running_slope;
};

struct SqueezeStudy {
  std::vector<SqueezeRow> rows;
  double slope = 0.0;
  double max_min_ratio = 0.0;
  double chunkiness_slope = 0.0;
  /// Chunkiness slope over α ≤ kChunkinessTailAlpha only. Near α = 1 h/ρ is
  /// not yet ~1/α, so the full-range fit sits around −0.92; NaN with fewer
  /// than two tail rows.
  double chunkiness_tail_slope = 0.0;
  bool theory_valid = true;
};

inline constexpr double kChunkinessTailAlpha = 0x1.0p-5;

struct SqueezeOptions {
  int d = 2;
  int k = 1;
  int m = 1;
  double p = 2.0;
  std::vector<double> alphas;
  /// d=3: fixed β; unset means β = α.
  std::optional<double> beta;
  EstimateMethod method = EstimateMethod::rayleigh;
  int r = 3;
  /// Rayleigh quadrature exactness; 0 picks 2(k+r').
  int exactness = 0;
  int probe_count = 200;
  /// Rayleigh maximizers added to sampling families (see add_extremals).
  int extremal_count = 4;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// {2^0, 2^-1, ..., 2^-n}.
std::vector<double> dyadic_alphas(int n);

/// B estimates on K_α (K_αβ) per α, slope and max/min of the estimates, and
/// the chunkiness slope as contrast. Rows are independent and computed on up
/// to `threads` workers; the result does not depend on the thread count.
SqueezeStudy squeeze_boundedness_study(const SqueezeOptions& opts);

struct ScalingTriangle {
  std::string family;  // equilateral | needle | cap
  double parameter = 0.0;
  std::vector<Point> vertices;
};

/// Equilateral scaled by h ∈ {1, 1/2, 1/4, 1/8}, needles {(0,0),(1,0),(0,α)}
/// and caps {(0,0),(1,0),(1/2,ε)} for α, ε = 2^-1..2^-n (needles also 2^0).
std::vector<ScalingTriangle> default_scaling_family(int n = 10);

struct ScalingRow {
  ScalingTriangle triangle;
  GeometryReport geometry;
  /// max over probes of |v−Iv|_m / (R^m h^{k+1−2m} |v|_{k+1}).
  double rho_obs = 0.0;
  /// Same without the circumradius factor: |v−Iv|_m / (h^{k+1−m} |v|_{k+1}).
  double raw_ratio = 0.0;
  bool skipped = false;
  std::string reason;
};

struct ScalingStudy {
  std::vector<ScalingRow> rows;
  double max_rho_obs = 0.0;
  double min_rho_obs = 0.0;
  /// max/min of rho_obs over needle and cap rows.
  double needle_cap_ratio = 0.0;
  /// max/min of rho_obs over equilateral rows, minus one.
  double equilateral_spread = 0.0;
};

struct ScalingOptions {
  int k = 1;
  int m = 1;
  double p = 2.0;
  int r = 3;
  int probe_count = 200;
  int extremal_count = 4;
  std::uint64_t seed = 0;
  int threads = 1;
  std::vector<ScalingTriangle> triangles;  // empty: default_scaling_family()
};

/// Ill-conditioned elements are skipped with the reason recorded.
ScalingStudy circumradius_scaling_study(const ScalingOptions& opts);

}  // namespace simplexinterp
