#pragma once

#include <limits>
#include <string>

#include "simplexinterp/geometry.hpp"
#include "simplexinterp/multiindex.hpp"
#include "simplexinterp/polynomial.hpp"
#include "simplexinterp/quadrature.hpp"

namespace simplexinterp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lattice order used for sampling sup-norms.
inline constexpr int kSupLatticeOrder = 64;
/// Red-refinement depth for L^p with non-even p.
inline constexpr int kSubdivisionLevels = 3;

/// p in [1, ∞]; ∞ is kInf.
void validate_exponent(double p);
bool is_even_integer(double p);
/// "inf" or the shortest round-tripping decimal.
std::string format_exponent(double p);
/// Accepts "inf" (any case), "infinity", or a number ≥ 1.
double parse_exponent(const std::string& text);

/// Weighted seminorm |v|_{m,p,K} with weights m!/γ!.
struct SeminormSpec {
  int m = 0;
  double p = 2.0;
  /// Metadata only; never enforced.
  bool theory_valid = true;
};

/// Value plus a heuristic error estimate. The estimate is 0 where the
/// evaluation is exact (even p on polynomials) and the lattice spacing for
/// p = ∞, where the value is a lower bound.
struct NormValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Simplex rule of the given exactness, built once per (d, exactness) and
/// shared between threads.
const QuadratureRule& cached_simplex_rule(int d, int exactness);

/// Exactness needed to integrate |q|^p exactly for a polynomial q of the
/// given degree (even p), clamped to the supported range.
int exactness_for(int degree, double p);

/// (∫_K |v|^p)^{1/p} with the mapped rule for finite p. For p = ∞ the rule
/// is ignored and the maximum over Σ^64(K) is refined by sweeps of
/// golden-section searches along the lattice directions, moving to each
/// improvement.
double lp_norm(const ScalarField& v, const Simplex& K, double p, const QuadratureRule& rule);

/// L^p norm of a polynomial with the evaluation scheme chosen from p: exact
/// quadrature for even p, red subdivision (kSubdivisionLevels) with a
/// Richardson-style estimate against one level less otherwise, lattice
/// sampling for p = ∞.
NormValue lp_norm_estimate(const Polynomial& v, const Simplex& K, double p);

/// (Σ_{|γ|=m} (m!/γ!) ‖∂^γ v‖_p^p)^{1/p}, or max_γ ‖∂^γ v‖_∞ for p = ∞.
/// The explicit rule is used as is for finite p.
double seminorm(const Polynomial& v, const Simplex& K, const SeminormSpec& spec, const QuadratureRule& rule);
/// Same with the scheme and rule chosen as in lp_norm_estimate.
NormValue seminorm(const Polynomial& v, const Simplex& K, const SeminormSpec& spec);

/// Relative discrepancy between |v|^p_{m,p,K_α} and
/// vol · Σ (m!/γ!)(α,β)^{−γp} |∂^γ u|^p_{0,p,K̂} with u = v∘F_αβ
/// (vol = α or αβ). For p = ∞ the max form is compared instead.
double squeeze_seminorm_identity_check(const Polynomial& v, int m, double p, double alpha, double beta = 1.0);

/// Relative discrepancy between Σ_{|γ|=m} (m!/γ!) |∂^γ v|^p_{k+1−m,p,K}
/// and |v|^p_{k+1,p,K} (even p) or their max forms (p = ∞).
double seminorm_decomposition_check(const Polynomial& v, const Simplex& K, int k, int m, double p);

/// Imbedding W^{k+1,p} ⊂ C^0: any p for d=2 or d=3 with k+1 ≥ 3, and
/// p > 3/2 for d=3 with k+1 = 2.
bool imbedding_valid(int d, int k, double p);
/// p-choice for box constraints: d=3 with k+1−|δ| = 1 needs p > 2.
bool box_rule_valid(int d, int k, int delta_order, double p);
/// Regimes of the squeeze bound: any p for d=2; for d=3, k=m needs p > 2,
/// k=1, m=0 needs p > 3/2, and k ≥ 2 with k−m ≥ 1 allows every p.
bool squeeze_theory_valid(int d, int k, int m, double p);

}  // namespace simplexinterp
