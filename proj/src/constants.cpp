#include "simplexinterp/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "simplexinterp/diffquot.hpp"
#include "simplexinterp/errors.hpp"
#include "simplexinterp/lagrange.hpp"
#include "simplexinterp/linalg.hpp"
#include "simplexinterp/norms.hpp"
#include "simplexinterp/parallel.hpp"
#include "simplexinterp/quadrature.hpp"

namespace simplexinterp {

namespace {

// Σ_{|γ|=order} (order!/γ!) ∫_K ∂^γ f_i ∂^γ f_j, or the single term ∫ ∂^γ f_i ∂^γ f_j
// (unweighted) when `only` is given.
linalg::Matrix weighted_gram(const std::vector<Polynomial>& fs, int d, int order, const MappedRule& rule,
                             const std::optional<MultiIndex>& only = std::nullopt) {
  const std::size_t n = fs.size();
  const std::size_t q = rule.points.size();
  linalg::Matrix g(n, n);
  std::vector<double> vals(n * q);
  for (const auto& gamma : only ? std::vector<MultiIndex>{*only} : enumerate_order(d, order)) {
    const double w = only ? 1.0 : static_cast<double>(multinomial_weight(order, gamma));
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial di = fs[i].derivative(gamma);
      for (std::size_t t = 0; t < q; ++t) vals[i * q + t] = di(rule.points[t]);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t t = 0; t < q; ++t) s += rule.weights[t] * vals[i * q + t] * vals[j * q + t];
        g(i, j) += w * s;
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

std::optional<double> rayleigh_max(const linalg::Matrix& a, const linalg::Matrix& g) {
  const auto eig = linalg::generalized_eigen(a, g);
  if (!eig) return std::nullopt;
  return std::sqrt(std::max(0.0, eig->values.back()));
}

std::string default_descriptor(const Simplex& K) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (int i = 0; i <= K.dim(); ++i) {
    if (i) os << ";";
    for (int c = 0; c < K.dim(); ++c) os << (c ? " " : "") << K.vertex(i)[c];
  }
  os << "]";
  return os.str();
}

// Exponents of degree lo..hi in graded order.
std::vector<MultiIndex> exponent_band(int d, int lo, int hi) {
  const auto all = monomial_exponents(d, hi);
  return {all.begin() + static_cast<std::ptrdiff_t>(lo > 0 ? dim_polynomials(d, lo - 1) : 0), all.end()};
}

template <class Map>
ProbeFamily build_family(const std::string& name, int d, int k, int r, int random_count, std::uint64_t seed,
                         Map&& to_element) {
  if (r < 1) throw InvalidArgument("probe excess degree r must be at least 1");
  if (k + r > kMaxPolynomialDegree) throw InvalidArgument("probe degree k+r too large");
  if (random_count < 0) throw InvalidArgument("probe count must be nonnegative");
  ProbeFamily f;
  f.name = name;
  f.seed = seed;
  for (const auto& e : exponent_band(d, k + 1, k + r)) {
    f.probes.push_back(to_element(Polynomial::monomial(e)));
    f.excess.push_back(e.order() - k);
  }
  Rng rng(seed);
  for (int i = 0; i < random_count; ++i) {
    const int ex = 1 + i % r;
    f.probes.push_back(to_element(random_polynomial(d, k + 1, k + ex, rng)));
    f.excess.push_back(ex);
  }
  return f;
}

// q ↦ q((x − x_0)/h_K).
std::function<Polynomial(const Polynomial&)> isotropic_map(const Simplex& K) {
  Mat3 a{};
  Point b{0.0, 0.0, 0.0};
  for (int c = 0; c < K.dim(); ++c) {
    a[c][c] = 1.0 / K.diameter();
    b[c] = -K.vertex(0)[c] / K.diameter();
  }
  return [a, b](const Polynomial& q) { return compose_affine(q, a, b); };
}

// Axis squeezes keep the anisotropic reference scaling; other elements use
// the isotropic map, which stays well conditioned on flat caps where the
// push-forward through F_K⁻¹ does not.
std::function<Polynomial(const Polynomial&)> probe_map(const Simplex& K) {
  if (K.is_axis_squeeze()) return [K](const Polynomial& q) { return push_forward(q, K); };
  return isotropic_map(K);
}

void check_orders(int k, int m) {
  if (k < 1 || k > kMaxLagrangeOrder) throw InvalidArgument("k must lie in [1, 6]");
  if (m < 0 || m > k) throw InvalidArgument("m must lie in [0, k]");
}

}  // namespace

std::string to_string(ConstantTarget t) { return t == ConstantTarget::B ? "B" : "A"; }
std::string to_string(EstimateMethod m) { return m == EstimateMethod::rayleigh ? "rayleigh" : "sampling"; }

EstimateMethod parse_method(const std::string& text) {
  if (text == "rayleigh") return EstimateMethod::rayleigh;
  if (text == "sampling") return EstimateMethod::sampling;
  throw InvalidArgument("method must be \"rayleigh\" or \"sampling\", got \"" + text + "\"");
}

Polynomial random_polynomial(int d, int lo, int hi, Rng& rng) {
  if (lo < 0 || hi < lo || hi > kMaxPolynomialDegree) throw InvalidArgument("bad random polynomial degree range");
  Polynomial q(d, hi);
  for (const auto& e : exponent_band(d, lo, hi)) q.set_coeff(e, rng.uniform(-1.0, 1.0));
  return q;
}

ProbeFamily ProbeFamily::isotropic(const Simplex& K, int k, int r, int random_count, std::uint64_t seed) {
  return build_family("isotropic", K.dim(), k, r, random_count, seed, isotropic_map(K));
}

ProbeFamily ProbeFamily::reference(const Simplex& K, int k, int r, int random_count, std::uint64_t seed) {
  return build_family("reference", K.dim(), k, r, random_count, seed,
                      [&](const Polynomial& q) { return push_forward(q, K); });
}

namespace {

struct RayleighSolve {
  double value = 0.0;
  int exactness = 0;
  std::vector<Polynomial> extremals;  // generalized eigenvectors, largest first
};

RayleighSolve rayleigh_solve(const Simplex& K, const LagrangeBasis& basis, int k, int m, int r, int exactness,
                             std::size_t keep, const std::optional<MultiIndex>& only = std::nullopt) {
  const int d = K.dim();
  const auto to_element = probe_map(K);
  std::vector<Polynomial> probes, residuals;
  for (const auto& e : exponent_band(d, k + 1, k + r)) {
    Polynomial q = to_element(Polynomial::monomial(e));
    residuals.push_back(q - basis.interpolate(q));
    probes.push_back(std::move(q));
  }
  int e = std::min(exactness > 0 ? exactness : 2 * (k + r), kMaxQuadratureExactness);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const MappedRule rule = map_rule(K, cached_simplex_rule(d, e));
    const auto eig =
        linalg::generalized_eigen(weighted_gram(residuals, d, m, rule, only), weighted_gram(probes, d, k + 1, rule));
    if (eig) {
      RayleighSolve out;
      out.value = std::sqrt(std::max(0.0, eig->values.back()));
      out.exactness = e;
      const std::size_t n = probes.size();
      for (std::size_t c = 0; c < std::min(keep, n); ++c) {
        const std::size_t col = n - 1 - c;
        Polynomial v(d, k + r);
        for (std::size_t j = 0; j < n; ++j) v += probes[j] * eig->vectors(j, col);
        const double scale = v.max_abs_coeff();
        if (scale > 0.0) v *= 1.0 / scale;
        out.extremals.push_back(std::move(v));
      }
      return out;
    }
    if (e == kMaxQuadratureExactness) break;
    e = std::min(e + 4, kMaxQuadratureExactness);
  }
  throw NumericalError("Rayleigh estimate: probe Gram matrix is not positive definite (k=" + std::to_string(k) +
                       ", r=" + std::to_string(r) + ")");
}

}  // namespace

ConstantEstimate estimate_B_rayleigh(const Simplex& K, int k, int m, int r, int exactness,
                                     const std::string& descriptor) {
  check_orders(k, m);
  if (r < 1) throw InvalidArgument("probe excess degree r must be at least 1");
  if (k + r > 8) throw InvalidArgument("Rayleigh probes need k + r <= 8");
  const int d = K.dim();
  const LagrangeBasis basis(K, k);
  ConstantEstimate est;
  est.target = ConstantTarget::B;
  est.method = EstimateMethod::rayleigh;
  est.d = d;
  est.k = k;
  est.m = m;
  est.p = 2.0;
  est.simplex = descriptor.empty() ? default_descriptor(K) : descriptor;
  est.r = r;
  est.theory_valid = imbedding_valid(d, k, 2.0) && squeeze_theory_valid(d, k, m, 2.0);
  double running = 0.0;
  for (int rr = 1; rr <= r; ++rr) {
    const auto solve = rayleigh_solve(K, basis, k, m, rr, exactness, 0);
    est.exactness = solve.exactness;
    // Nested spans give nondecreasing suprema; the running max absorbs
    // eigen-solver roundoff.
    running = std::max(running, solve.value);
    est.trace.push_back({rr, running});
  }
  est.value = running;
  return est;
}

std::vector<Polynomial> rayleigh_extremal_probes(const Simplex& K, int k, int m, int r, int count) {
  check_orders(k, m);
  if (r < 1 || k + r > 8) throw InvalidArgument("Rayleigh probes need r >= 1 and k + r <= 8");
  if (count < 0) throw InvalidArgument("extremal probe count must be nonnegative");
  const LagrangeBasis basis(K, k);
  auto out = rayleigh_solve(K, basis, k, m, r, 0, static_cast<std::size_t>(count)).extremals;
  // Maximizers of single derivative components suit the max-type p = ∞ seminorm.
  if (m > 0) {
    for (const auto& gamma : enumerate_order(K.dim(), m)) {
      auto part = rayleigh_solve(K, basis, k, m, r, 0, 1, gamma).extremals;
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

void ProbeFamily::add_extremals(const Simplex& K, int k, int m, int r, int count) {
  for (auto& v : rayleigh_extremal_probes(K, k, m, r, count)) {
    probes.push_back(std::move(v));
    excess.push_back(r);
  }
}

ConstantEstimate estimate_B_sampling(const Simplex& K, int k, int m, double p, const ProbeFamily& family,
                                     const std::string& descriptor) {
  check_orders(k, m);
  validate_exponent(p);
  if (family.probes.empty()) throw InvalidArgument("probe family is empty");
  const int d = K.dim();
  const LagrangeBasis basis(K, k);
  ConstantEstimate est;
  est.target = ConstantTarget::B;
  est.method = EstimateMethod::sampling;
  est.d = d;
  est.k = k;
  est.m = m;
  est.p = p;
  est.simplex = descriptor.empty() ? default_descriptor(K) : descriptor;
  est.seed = family.seed;
  est.theory_valid = imbedding_valid(d, k, p) && squeeze_theory_valid(d, k, m, p);
  const int r = *std::max_element(family.excess.begin(), family.excess.end());
  est.r = r;
  std::vector<double> best_at(static_cast<std::size_t>(r) + 1, 0.0);
  double best = 0.0;
  for (std::size_t i = 0; i < family.probes.size(); ++i) {
    const Polynomial& v = family.probes[i];
    if (v.effective_degree() <= k) {
      ++est.skipped_probes;
      continue;
    }
    const NormValue den = seminorm(v, K, {k + 1, p, est.theory_valid});
    if (!(den.value > 0.0)) {
      ++est.skipped_probes;
      continue;
    }
    const NormValue num = seminorm(v - basis.interpolate(v), K, {m, p, est.theory_valid});
    const double ratio = num.value / den.value;
    const int ex = family.excess[i];
    best_at[ex] = std::max(best_at[ex], ratio);
    if (ratio > best) {
      best = ratio;
      est.attaining_probe = static_cast<int>(i);
      est.error_estimate =
          ratio * ((num.value > 0.0 ? num.error_estimate / num.value : 0.0) + den.error_estimate / den.value);
    }
  }
  double running = 0.0;
  for (int rr = 1; rr <= r; ++rr) {
    running = std::max(running, best_at[rr]);
    est.trace.push_back({rr, running});
  }
  est.value = best;
  return est;
}

ConstantEstimate estimate_A(const MultiIndex& delta, int k, double p, int r, int random_count, std::uint64_t seed) {
  const int d = static_cast<int>(delta.arity());
  if (d != 2 && d != 3) throw InvalidArgument("delta must have arity 2 or 3");
  if (k < 1 || k > kMaxLagrangeOrder) throw InvalidArgument("k must lie in [1, 6]");
  if (delta.order() < 1 || delta.order() > k) throw InvalidArgument("A estimate needs 1 <= |delta| <= k");
  validate_exponent(p);
  if (r < 0) throw InvalidArgument("probe excess degree r must be nonnegative");
  const int n = k - delta.order();  // box moments determine P_n
  const int s = k + 1 - delta.order();
  const Simplex ref = reference_simplex(d);
  const auto boxes = enumerate_boxes(k, delta);

  ConstantEstimate est;
  est.target = ConstantTarget::A;
  est.method = std::isinf(p) || p != 2.0 ? EstimateMethod::sampling : EstimateMethod::rayleigh;
  est.d = d;
  est.k = k;
  est.m = delta.order();
  est.delta = delta;
  est.p = p;
  est.simplex = "reference";
  est.r = r;
  est.seed = seed;
  est.theory_valid = box_rule_valid(d, k, delta.order(), p);

  if (r == 0) {
    throw InsufficientProbeSpace("no probes: box moments are nonsingular on P_" + std::to_string(n) +
                                 ", so the constraint null space is empty; use r >= 1");
  }
  Rng rng(seed);
  double running = 0.0;
  for (int rr = 1; rr <= r; ++rr) {
    const int deg = n + rr;
    if (deg > kMaxPolynomialDegree) throw InvalidArgument("probe degree k-|delta|+r too large");
    const auto exps = monomial_exponents(d, deg);
    linalg::Matrix c(boxes.size(), exps.size());
    for (std::size_t j = 0; j < exps.size(); ++j) {
      const auto field = Polynomial::monomial(exps[j]).as_field();
      for (std::size_t i = 0; i < boxes.size(); ++i) c(i, j) = box_integral(field, boxes[i], deg);
    }
    const auto svd = linalg::jacobi_svd(c);
    const std::size_t rank = boxes.size();
    if (svd.singular_values[rank - 1] <= 1e-12 * svd.singular_values[0]) {
      throw NumericalError("box constraint matrix is rank deficient");
    }
    if (exps.size() <= rank) throw InsufficientProbeSpace("constraint null space is empty");
    std::vector<Polynomial> basis;
    for (std::size_t col = rank; col < exps.size(); ++col) {
      std::vector<double> coeffs(exps.size());
      for (std::size_t j = 0; j < exps.size(); ++j) coeffs[j] = svd.v(j, col);
      basis.emplace_back(d, deg, std::move(coeffs));
    }
    for (const auto& z : basis) {
      const auto field = z.as_field();
      for (const auto& box : boxes)
        est.constraint_residual = std::max(est.constraint_residual, std::abs(box_integral(field, box, deg)));
    }

    double value = 0.0;
    if (est.method == EstimateMethod::rayleigh) {
      const int e = std::min(2 * deg, kMaxQuadratureExactness);
      const MappedRule rule = map_rule(ref, cached_simplex_rule(d, e));
      est.exactness = e;
      const auto v = rayleigh_max(weighted_gram(basis, d, 0, rule), weighted_gram(basis, d, s, rule));
      if (!v) throw NumericalError("A estimate: seminorm Gram matrix is not positive definite");
      value = *v;
    } else {
      std::vector<Polynomial> probes = basis;
      for (int i = 0; i < random_count; ++i) {
        Polynomial q(d, deg);
        for (const auto& z : basis) q += z * rng.uniform(-1.0, 1.0);
        probes.push_back(std::move(q));
      }
      for (std::size_t i = 0; i < probes.size(); ++i) {
        const double den = seminorm(probes[i], ref, {s, p, est.theory_valid}).value;
        if (!(den > 0.0)) {
          ++est.skipped_probes;
          continue;
        }
        const double ratio = lp_norm_estimate(probes[i], ref, p).value / den;
        if (ratio > value) {
          value = ratio;
          if (rr == r) est.attaining_probe = static_cast<int>(i);
        }
      }
    }
    running = std::max(running, value);
    est.trace.push_back({rr, running});
  }
  est.value = running;
  return est;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope fit needs at least two points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InvalidArgument("slope fit needs distinct abscissae");
  return sxy / sxx;
}

std::vector<double> dyadic_alphas(int n) {
  if (n < 0 || n > 60) throw InvalidArgument("alpha exponent range must lie in [0, 60]");
  std::vector<double> a;
  for (int i = 0; i <= n; ++i) a.push_back(std::ldexp(1.0, -i));
  return a;
}

SqueezeStudy squeeze_boundedness_study(const SqueezeOptions& o) {
  if (o.d != 2 && o.d != 3) throw InvalidArgument("d must be 2 or 3");
  check_orders(o.k, o.m);
  validate_exponent(o.p);
  if (o.alphas.empty()) throw InvalidArgument("alpha list is empty");
  if (o.method == EstimateMethod::rayleigh && o.p != 2.0) {
    throw InvalidArgument("the rayleigh method needs p = 2; use sampling for other p");
  }
  SqueezeStudy study;
  study.theory_valid = imbedding_valid(o.d, o.k, o.p) && squeeze_theory_valid(o.d, o.k, o.m, o.p);
  study.rows.resize(o.alphas.size());
  parallel_for(o.alphas.size(), o.threads, [&](std::size_t i) {
    SqueezeRow& row = study.rows[i];
    row.alpha = o.alphas[i];
    row.beta = o.d == 3 ? o.beta.value_or(row.alpha) : 1.0;
    const Simplex K = squeeze(o.d, row.alpha, row.beta);
    JametOptions no_jamet;
    no_jamet.enabled = false;
    row.chunkiness = geometry_report(K, no_jamet).chunkiness;
    std::ostringstream desc;
    desc.precision(17);
    desc << (o.d == 2 ? "K_alpha(" : "K_alphabeta(") << row.alpha;
    if (o.d == 3) desc << "," << row.beta;
    desc << ")";
    if (o.method == EstimateMethod::rayleigh) {
      row.estimate = estimate_B_rayleigh(K, o.k, o.m, o.r, o.exactness, desc.str());
      row.estimate.seed = o.seed;
    } else {
      auto family = ProbeFamily::reference(K, o.k, o.r, o.probe_count, o.seed);
      if (o.extremal_count > 0) family.add_extremals(K, o.k, o.m, o.r, o.extremal_count);
      row.estimate = estimate_B_sampling(K, o.k, o.m, o.p, family, desc.str());
    }
  });
  std::vector<double> xs, ys, cs;
  for (auto& row : study.rows) {
    xs.push_back(row.alpha);
    ys.push_back(row.estimate.value);
    cs.push_back(row.chunkiness);
    if (xs.size() >= 2 && xs.front() != xs.back()) row.running_slope = loglog_slope(xs, ys);
  }
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  study.max_min_ratio = *hi / *lo;
  if (xs.size() >= 2) {
    study.slope = loglog_slope(xs, ys);
    study.chunkiness_slope = loglog_slope(xs, cs);
  }
  std::vector<double> tx, tc;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] <= kChunkinessTailAlpha) {
      tx.push_back(xs[i]);
      tc.push_back(cs[i]);
    }
  study.chunkiness_tail_slope = tx.size() >= 2 ? loglog_slope(tx, tc) : std::nan("");
  return study;
}

std::vector<ScalingTriangle> default_scaling_family(int n) {
  if (n < 1 || n > 30) throw InvalidArgument("scaling family exponent must lie in [1, 30]");
  std::vector<ScalingTriangle> t;
  const double s3 = std::sqrt(3.0) / 2.0;
  for (int i = 0; i <= 3; ++i) {
    const double h = std::ldexp(1.0, -i);
    t.push_back({"equilateral", h, {{0.0, 0.0, 0.0}, {h, 0.0, 0.0}, {0.5 * h, s3 * h, 0.0}}});
  }
  for (int i = 0; i <= n; ++i) {
    const double a = std::ldexp(1.0, -i);
    t.push_back({"needle", a, {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, a, 0.0}}});
  }
  for (int i = 1; i <= n; ++i) {
    const double e = std::ldexp(1.0, -i);
    t.push_back({"cap", e, {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.5, e, 0.0}}});
  }
  return t;
}

ScalingStudy circumradius_scaling_study(const ScalingOptions& o) {
  check_orders(o.k, o.m);
  validate_exponent(o.p);
  ScalingStudy study;
  const auto triangles = o.triangles.empty() ? default_scaling_family() : o.triangles;
  study.rows.resize(triangles.size());
  parallel_for(triangles.size(), o.threads, [&](std::size_t i) {
    ScalingRow& row = study.rows[i];
    row.triangle = triangles[i];
    try {
      const Simplex K(2, row.triangle.vertices);
      row.geometry = geometry_report(K);
      auto family = ProbeFamily::isotropic(K, o.k, o.r, o.probe_count, o.seed);
      if (o.extremal_count > 0) family.add_extremals(K, o.k, o.m, o.r, o.extremal_count);
      const double b = estimate_B_sampling(K, o.k, o.m, o.p, family).value;
      const double h = row.geometry.h, R = row.geometry.R;
      row.rho_obs = b / (std::pow(R, o.m) * std::pow(h, o.k + 1 - 2 * o.m));
      row.raw_ratio = b / std::pow(h, o.k + 1 - o.m);
    } catch (const NumericalError& e) {
      row.skipped = true;
      row.reason = e.what();
    }
  });
  double lo = kInf, hi = 0.0, nlo = kInf, nhi = 0.0, elo = kInf, ehi = 0.0;
  for (const auto& row : study.rows) {
    if (row.skipped) continue;
    lo = std::min(lo, row.rho_obs);
    hi = std::max(hi, row.rho_obs);
    if (row.triangle.family == "equilateral") {
      elo = std::min(elo, row.rho_obs);
      ehi = std::max(ehi, row.rho_obs);
    } else {
      nlo = std::min(nlo, row.rho_obs);
      nhi = std::max(nhi, row.rho_obs);
    }
  }
  study.max_rho_obs = hi;
  study.min_rho_obs = lo;
  study.needle_cap_ratio = nhi > 0.0 ? nhi / nlo : 0.0;
  study.equilateral_spread = ehi > 0.0 ? ehi / elo - 1.0 : 0.0;
  return study;
}

}  // namespace simplexinterp
