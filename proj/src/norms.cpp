#include "simplexinterp/norms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "simplexinterp/errors.hpp"

namespace simplexinterp {

namespace {

double simplex_jacobian_factor(const Simplex& K) { return K.volume() * (K.dim() == 2 ? 2.0 : 6.0); }

// Points and weights of a red-refined rule on K̂, cached per (d, e, levels).
const MappedRule& cached_reference_subdivision(int d, int exactness, int levels) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<MappedRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{d, exactness, levels}];
  if (!slot) {
    slot = std::make_unique<MappedRule>(
        subdivided_rule(reference_simplex(d), cached_simplex_rule(d, exactness), levels));
  }
  return *slot;
}

const std::vector<Point>& reference_lattice(int d) {
  static std::once_flag once2, once3;
  static std::vector<Point> l2, l3;
  auto fill = [](int dim, std::vector<Point>& out) {
    for (const auto& n : lattice_nodes(reference_simplex(dim), kSupLatticeOrder)) out.push_back(n.point);
  };
  if (d == 2) {
    std::call_once(once2, fill, 2, std::ref(l2));
    return l2;
  }
  std::call_once(once3, fill, 3, std::ref(l3));
  return l3;
}

// ∫_K |v|^p with a rule given in reference coordinates.
double integrate_power(const ScalarField& v, const Simplex& K, double p, const std::vector<Point>& ref_points,
                       const std::vector<double>& ref_weights) {
  const double jac = simplex_jacobian_factor(K);
  double s = 0.0;
  for (std::size_t i = 0; i < ref_points.size(); ++i) {
    const double a = std::abs(v(K.from_reference(ref_points[i])));
    s += ref_weights[i] * (p == 2.0 ? a * a : std::pow(a, p));
  }
  return s * jac;
}

// Feasible t-range so that x + t·dir stays in K̂.
std::pair<double, double> feasible_interval(int d, const Point& x, const Point& dir, double radius) {
  double lo = -radius, hi = radius;
  auto clip = [&](double value, double slope) {
    // value + t·slope ≥ 0
    if (slope > 0.0) lo = std::max(lo, -value / slope);
    else if (slope < 0.0) hi = std::min(hi, -value / slope);
  };
  double sum = 0.0, dsum = 0.0;
  for (int c = 0; c < d; ++c) {
    clip(x[c], dir[c]);
    sum += x[c];
    dsum += dir[c];
  }
  clip(1.0 - sum, -dsum);
  return {lo, hi};
}

double sup_norm(const ScalarField& v, const Simplex& K) {
  const int d = K.dim();
  const auto& lattice = reference_lattice(d);
  auto value = [&](const Point& xhat) { return std::abs(v(K.from_reference(xhat))); };
  double best = -1.0;
  Point arg{};
  for (const auto& xhat : lattice) {
    const double a = value(xhat);
    if (a > best) {
      best = a;
      arg = xhat;
    }
  }
  // Golden-section line searches along the lattice directions, moving the
  // centre to each improvement; sweep until a full pass gains nothing.
  std::vector<Point> dirs;
  for (int i = 0; i < d; ++i) {
    Point e{};
    e[i] = 1.0;
    dirs.push_back(e);
    for (int j = i + 1; j < d; ++j) {
      Point f{};
      f[i] = 1.0;
      f[j] = -1.0;
      dirs.push_back(f);
    }
  }
  const double radius = 1.0 / kSupLatticeOrder;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  Point centre = arg;
  for (int sweep = 0; sweep < 32; ++sweep) {
    const double before = best;
    for (const auto& dir : dirs) {
      auto [a, b] = feasible_interval(d, centre, dir, radius);
      if (!(b > a)) continue;
      auto along = [&](double t) {
        Point x = centre;
        for (int c = 0; c < d; ++c) x[c] += t * dir[c];
        return x;
      };
      double c1 = b - invphi * (b - a), c2 = a + invphi * (b - a);
      double f1 = value(along(c1)), f2 = value(along(c2));
      for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
          a = c1;
          c1 = c2;
          f1 = f2;
          c2 = a + invphi * (b - a);
          f2 = value(along(c2));
        } else {
          b = c2;
          c2 = c1;
          f2 = f1;
          c1 = b - invphi * (b - a);
          f1 = value(along(c1));
        }
      }
      const double t = f1 >= f2 ? c1 : c2;
      const double f = std::max(f1, f2);
      if (f > best) {
        best = f;
        centre = along(t);
      }
    }
    if (!(best > before * (1.0 + 1e-15))) break;
  }
  return best;
}

NormValue subdivided_lp(const Polynomial& v, const Simplex& K, double p) {
  const int deg = std::max(0, v.effective_degree());
  const int e = std::min(kMaxQuadratureExactness, static_cast<int>(std::ceil(p)) * deg + 2);
  const auto field = [&v](const Point& x) { return v(x); };
  const auto& fine = cached_reference_subdivision(K.dim(), e, kSubdivisionLevels);
  const auto& coarse = cached_reference_subdivision(K.dim(), e, kSubdivisionLevels - 1);
  const double nf = std::pow(integrate_power(field, K, p, fine.points, fine.weights), 1.0 / p);
  const double nc = std::pow(integrate_power(field, K, p, coarse.points, coarse.weights), 1.0 / p);
  // Kinks of |v| cost second order per halving.
  return {nf, std::abs(nf - nc) / 3.0};
}

}  // namespace

void validate_exponent(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("exponent p must lie in [1, inf]");
}

bool is_even_integer(double p) { return std::isfinite(p) && p == std::floor(p) && std::fmod(p, 2.0) == 0.0; }

std::string format_exponent(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

double parse_exponent(const std::string& text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "inf" || lower == "infinity") return kInf;
  char* end = nullptr;
  const double p = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(p)) {
    throw InvalidArgument("exponent p must be a number >= 1 or \"inf\", got \"" + text + "\"");
  }
  validate_exponent(p);
  return p;
}

const QuadratureRule& cached_simplex_rule(int d, int exactness) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{d, exactness}];
  if (!slot) slot = std::make_unique<QuadratureRule>(simplex_rule(d, exactness));
  return *slot;
}

int exactness_for(int degree, double p) {
  const double e = std::isfinite(p) ? std::ceil(p) * std::max(degree, 0) : 0.0;
  return static_cast<int>(std::min<double>(kMaxQuadratureExactness, e));
}

double lp_norm(const ScalarField& v, const Simplex& K, double p, const QuadratureRule& rule) {
  validate_exponent(p);
  if (std::isinf(p)) return sup_norm(v, K);
  if (rule.dim != K.dim()) throw InvalidArgument("quadrature rule dimension mismatch");
  return std::pow(integrate_power(v, K, p, rule.points, rule.weights), 1.0 / p);
}

NormValue lp_norm_estimate(const Polynomial& v, const Simplex& K, double p) {
  validate_exponent(p);
  if (v.is_zero()) return {0.0, 0.0};
  const auto field = [&v](const Point& x) { return v(x); };
  if (std::isinf(p)) return {sup_norm(field, K), 1.0 / kSupLatticeOrder};
  const int deg = std::max(0, v.effective_degree());
  if (is_even_integer(p) && p * deg <= kMaxQuadratureExactness) {
    return {lp_norm(field, K, p, cached_simplex_rule(K.dim(), static_cast<int>(p) * deg)), 0.0};
  }
  return subdivided_lp(v, K, p);
}

double seminorm(const Polynomial& v, const Simplex& K, const SeminormSpec& spec, const QuadratureRule& rule) {
  validate_exponent(spec.p);
  if (spec.m < 0) throw InvalidArgument("seminorm order m must be nonnegative");
  double acc = 0.0;
  for (const auto& gamma : enumerate_order(K.dim(), spec.m)) {
    const Polynomial dv = v.derivative(gamma);
    const double n = lp_norm([&dv](const Point& x) { return dv(x); }, K, spec.p, rule);
    if (std::isinf(spec.p)) acc = std::max(acc, n);
    else acc += static_cast<double>(multinomial_weight(spec.m, gamma)) * std::pow(n, spec.p);
  }
  return std::isinf(spec.p) ? acc : std::pow(acc, 1.0 / spec.p);
}

NormValue seminorm(const Polynomial& v, const Simplex& K, const SeminormSpec& spec) {
  validate_exponent(spec.p);
  if (spec.m < 0) throw InvalidArgument("seminorm order m must be nonnegative");
  double acc = 0.0, acc_hi = 0.0;
  for (const auto& gamma : enumerate_order(K.dim(), spec.m)) {
    const NormValue n = lp_norm_estimate(v.derivative(gamma), K, spec.p);
    if (std::isinf(spec.p)) {
      acc = std::max(acc, n.value);
      acc_hi = std::max(acc_hi, n.value + n.error_estimate);
    } else {
      const double w = static_cast<double>(multinomial_weight(spec.m, gamma));
      acc += w * std::pow(n.value, spec.p);
      acc_hi += w * std::pow(n.value + n.error_estimate, spec.p);
    }
  }
  if (std::isinf(spec.p)) return {acc, acc_hi - acc};
  const double value = std::pow(acc, 1.0 / spec.p);
  return {value, std::pow(acc_hi, 1.0 / spec.p) - value};
}

double squeeze_seminorm_identity_check(const Polynomial& v, int m, double p, double alpha, double beta) {
  validate_exponent(p);
  if (!is_even_integer(p) && !std::isinf(p)) {
    throw InvalidArgument("squeeze identity check needs an even integer p or inf");
  }
  const int d = v.dim();
  const Simplex Ka = squeeze(d, alpha, beta);
  const Simplex ref = reference_simplex(d);
  const Polynomial u = pull_back(v, Ka);
  const SeminormSpec spec{m, p, true};
  const double vol = d == 2 ? alpha : alpha * beta;
  auto scale = [&](const MultiIndex& g) { return std::pow(alpha, g[1]) * (d == 3 ? std::pow(beta, g[2]) : 1.0); };
  double lhs = 0.0, rhs = 0.0;
  if (std::isinf(p)) {
    lhs = seminorm(v, Ka, spec).value;
    for (const auto& g : enumerate_order(d, m)) {
      rhs = std::max(rhs, lp_norm_estimate(u.derivative(g), ref, p).value / scale(g));
    }
  } else {
    lhs = std::pow(seminorm(v, Ka, spec).value, p);
    for (const auto& g : enumerate_order(d, m)) {
      const double n = lp_norm_estimate(u.derivative(g), ref, p).value;
      rhs += static_cast<double>(multinomial_weight(m, g)) * std::pow(scale(g), -p) * std::pow(n, p);
    }
    rhs *= vol;
  }
  if (lhs == 0.0 && rhs == 0.0) return 0.0;
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

double seminorm_decomposition_check(const Polynomial& v, const Simplex& K, int k, int m, double p) {
  validate_exponent(p);
  if (m < 0 || m > k + 1) throw InvalidArgument("decomposition needs 0 <= m <= k+1");
  if (!is_even_integer(p) && !std::isinf(p)) {
    throw InvalidArgument("decomposition check needs an even integer p or inf");
  }
  const double full = seminorm(v, K, {k + 1, p, true}).value;
  double lhs = 0.0;
  double rhs = 0.0;
  if (std::isinf(p)) {
    rhs = full;
    for (const auto& g : enumerate_order(K.dim(), m))
      lhs = std::max(lhs, seminorm(v.derivative(g), K, {k + 1 - m, p, true}).value);
  } else {
    rhs = std::pow(full, p);
    for (const auto& g : enumerate_order(K.dim(), m)) {
      lhs += static_cast<double>(multinomial_weight(m, g)) *
             std::pow(seminorm(v.derivative(g), K, {k + 1 - m, p, true}).value, p);
    }
  }
  if (lhs == 0.0 && rhs == 0.0) return 0.0;
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

bool imbedding_valid(int d, int k, double p) {
  if (d == 3 && k + 1 == 2) return p > 1.5;
  return p >= 1.0;
}

bool box_rule_valid(int d, int k, int delta_order, double p) {
  if (d == 3 && k + 1 - delta_order == 1) return p > 2.0;
  return p >= 1.0;
}

bool squeeze_theory_valid(int d, int k, int m, double p) {
  if (d == 2) return p >= 1.0;
  if (k == m) return p > 2.0;
  if (k == 1 && m == 0) return p > 1.5;
  return k >= 2 && k - m >= 1 && p >= 1.0;
}

}  // namespace simplexinterp
