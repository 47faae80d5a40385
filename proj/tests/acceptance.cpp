// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are the contractual ones.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simplexinterp/constants.hpp"
#include "simplexinterp/diffquot.hpp"
#include "simplexinterp/lagrange.hpp"
#include "simplexinterp/multiindex.hpp"
#include "simplexinterp/norms.hpp"
#include "simplexinterp/studies.hpp"
#include "support.hpp"

using namespace simplexinterp;
using testsupport::SplitMix;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::uint64_t binom(int n, int r) {
  std::uint64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return b;
}

// Interpolation reproduces P_k.
Outcome interpolation_exactness() {
  SplitMix g(101);
  double worst = 0.0;
  int configs = 0;
  for (int d = 2; d <= 3; ++d) {
    std::vector<Simplex> elements{reference_simplex(d)};
    for (double a : {0x1.0p-1, 0x1.0p-5, 0x1.0p-10}) {
      elements.push_back(squeeze(d, a, d == 3 ? a : 1.0));
      if (d == 3) elements.push_back(squeeze(d, a, 0x1.0p-10));
    }
    for (int i = 0; i < 20; ++i) elements.push_back(testsupport::random_simplex(g, d));
    for (int k = 1; k <= 4; ++k)
      for (const auto& K : elements) {
        const LagrangeBasis basis(K, k);
        std::vector<Point> pts;
        for (const auto& n : basis.nodes()) pts.push_back(n.point);
        for (int i = 0; i < 50; ++i) pts.push_back(testsupport::random_point(g, K));
        for (int t = 0; t < 100; ++t) {
          const Polynomial q = testsupport::random_poly(g, d, k);
          const Polynomial iq = basis.interpolate(q);
          double sup = 0.0, res = 0.0;
          for (const auto& x : pts) {
            sup = std::max(sup, std::abs(q(x)));
            res = std::max(res, std::abs(iq(x) - q(x)));
          }
          worst = std::max(worst, res / sup);
        }
        ++configs;
      }
  }
  return {worst <= 1e-9, std::to_string(configs) + " elements x 100 probes, max residual/sup " + num(worst)};
}

// Direct sum, recursion and box integral of ∂^δ f agree.
Outcome triple_identity() {
  SplitMix g(202);
  double worst = 0.0;
  int cases = 0;
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 5; ++k)
      for (int deg : {1, 4, 8}) {
        const Polynomial f = testsupport::random_poly(g, d, deg);
        const auto field = f.as_field();
        for (int n = 1; n <= k; ++n)
          for (const auto& delta : enumerate_order(d, n)) {
            MultiIndex eta(d);
            for (int c = 0; c < d; ++c)
              if (delta[c] > 0) {
                eta = MultiIndex::unit(d, c);
                break;
              }
            const double scale_floor = f.derivative(delta).max_abs_coeff() / delta.factorial();
            for (const auto& gamma : enumerate_up_to(d, k - n)) {
              const double direct = diff_quotient(field, k, gamma, delta);
              const double rec = diff_quotient_recursive(field, k, gamma, delta, eta).value;
              if (deg < n) {
                // ∂^δ f = 0: both sums must vanish relative to their terms.
                double terms = 0.0;
                for (const auto& e : enumerate_up_to(d, n))
                  if (e.is_le(delta))
                    terms += std::abs(f(reference_node(gamma + e, k))) / (e.factorial() * (delta - e).factorial());
                terms *= std::pow(k, n);
                worst = std::max({worst, std::abs(direct) / terms, std::abs(rec) / terms});
              } else {
                const double scale = std::max({std::abs(direct), std::abs(rec), scale_floor});
                worst = std::max(worst, std::abs(direct - rec) / scale);
                worst = std::max(worst, integral_representation_check(f, k, gamma, delta, deg - n));
              }
              ++cases;
            }
          }
      }
  return {worst <= 1e-9, std::to_string(cases) + " (k, delta, gamma, f) cases, max relative discrepancy " + num(worst)};
}

Outcome annihilation() {
  SplitMix g(303);
  double worst = 0.0;
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 4; ++k)
      for (int t = 0; t < 50; ++t)
        worst = std::max(worst, annihilation_check(testsupport::random_poly(g, d, k + 3), k, k + 3));
  return {worst <= 1e-8, "max box integral of v - Iv over max node |v|: " + num(worst)};
}

Outcome box_moments() {
  bool counts = true;
  double sigma = kInf;
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 4; ++k)
      for (int n = 1; n <= k; ++n)
        for (const auto& delta : enumerate_order(d, n)) {
          counts = counts && enumerate_boxes(k, delta).size() == binom(k - n + d, d);
          sigma = std::min(sigma, box_moment_matrix(k, delta, 2 * k).sigma_min);
        }
  return {counts && sigma > 1e-8, std::string(counts ? "counts match" : "count mismatch") + ", min sigma " + num(sigma)};
}

Outcome seminorm_identities() {
  bool split = true;
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= 9; ++n)
      for (const auto& delta : enumerate_order(d, n))
        for (int m = 0; m < n; ++m) split = split && split_identity_check(delta, m);
  SplitMix g(505);
  double decomposition = 0.0, squeezed = 0.0;
  for (int d = 2; d <= 3; ++d) {
    const std::vector<Simplex> elements{reference_simplex(d), testsupport::random_simplex(g, d)};
    for (int k = 1; k <= 4; ++k)
      for (int t = 0; t < 3; ++t) {
        const Polynomial v = testsupport::random_poly(g, d, k + 3);
        for (const auto& K : elements)
          for (int m = 0; m <= k; ++m)
            decomposition = std::max(decomposition, seminorm_decomposition_check(v, K, k, m, 2.0));
        for (double a : {0x1.0p-1, 0x1.0p-6, 0x1.0p-10})
          for (int m = 0; m <= k + 1; ++m)
            squeezed = std::max(squeezed, squeeze_seminorm_identity_check(v, m, 2.0, a, d == 3 ? 0x1.0p-3 : 1.0));
      }
  }
  return {split && decomposition <= 1e-10 && squeezed <= 1e-10,
          std::string(split ? "split identity exact" : "split identity broken") + ", decomposition " +
              num(decomposition) + ", squeeze " + num(squeezed)};
}

Outcome squeeze_boundedness() {
  Outcome out;
  int studies = 0;
  double worst_slope = 0.0, worst_ratio = 0.0, worst_chunk = 0.0;
  for (int d = 2; d <= 3; ++d)
    for (int k = 1; k <= 3; ++k)
      for (int m = 0; m <= k; ++m) {
        if (!squeeze_theory_valid(d, k, m, 2.0)) continue;
        SqueezeOptions o;
        o.d = d;
        o.k = k;
        o.m = m;
        o.alphas = dyadic_alphas(10);
        const auto s = squeeze_boundedness_study(o);
        const double chunk = std::abs(s.chunkiness_tail_slope + 1.0);
        const bool ok = std::abs(s.slope) <= 0.1 && s.max_min_ratio <= 10.0 && chunk <= 0.05;
        if (!ok) {
          out.pass = false;
          out.detail += " [d=" + std::to_string(d) + " k=" + std::to_string(k) + " m=" + std::to_string(m) +
                        ": slope " + num(s.slope) + ", ratio " + num(s.max_min_ratio) + ", chunkiness slope " +
                        num(s.chunkiness_tail_slope) + "]";
        }
        worst_slope = std::max(worst_slope, std::abs(s.slope));
        worst_ratio = std::max(worst_ratio, s.max_min_ratio);
        worst_chunk = std::max(worst_chunk, chunk);
        ++studies;
      }
  out.detail = std::to_string(studies) + " studies, max |slope| " + num(worst_slope) + ", max ratio " +
               num(worst_ratio) + ", max |chunkiness slope + 1| " + num(worst_chunk) + out.detail;
  return out;
}

Outcome circumradius_scaling() {
  Outcome out;
  double worst_ratio = 0.0, worst_spread = 0.0, max_semireg = 0.0;
  for (double p : {1.0, 2.0, kInf})
    for (int k = 1; k <= 3; ++k)
      for (int m = 0; m <= k; ++m) {
        ScalingOptions o;
        o.k = k;
        o.m = m;
        o.p = p;
        const auto s = circumradius_scaling_study(o);
        for (const auto& row : s.rows) max_semireg = std::max(max_semireg, row.geometry.semiregularity);
        const bool ok = s.needle_cap_ratio <= 10.0 && s.equilateral_spread <= 0.01;
        if (!ok) {
          out.pass = false;
          out.detail += " [p=" + format_exponent(p) + " k=" + std::to_string(k) + " m=" + std::to_string(m) +
                        ": needle/cap ratio " + num(s.needle_cap_ratio) + ", spread " + num(s.equilateral_spread) +
                        "]";
        }
        worst_ratio = std::max(worst_ratio, s.needle_cap_ratio);
        worst_spread = std::max(worst_spread, s.equilateral_spread);
      }
  out.pass = out.pass && max_semireg > 100.0;
  out.detail = "max R/h " + num(max_semireg) + ", max needle/cap ratio " + num(worst_ratio) +
               ", max equilateral spread " + num(worst_spread) + out.detail;
  return out;
}

// Independent oracle for B_2^{1,1}(K̂): the residuals w = x^a y^b − I w of
// all monomials of degree 2..N in closed-form moments and long double, solved
// as a generalized symmetric eigenproblem by Eigen.
double oracle_B211(int N) {
  using Poly = std::map<std::pair<int, int>, long double>;
  auto moment = [](int a, int b) {
    long double r = 1.0L;
    // a! b! / (a + b + 2)!
    for (int i = 1; i <= a; ++i) r *= i;
    for (int i = 1; i <= b; ++i) r *= i;
    for (int i = 1; i <= a + b + 2; ++i) r /= i;
    return r;
  };
  auto inner = [&](const Poly& u, const Poly& v) {
    long double s = 0.0L;
    for (const auto& [eu, cu] : u)
      for (const auto& [ev, cv] : v) s += cu * cv * moment(eu.first + ev.first, eu.second + ev.second);
    return s;
  };
  auto dx = [](const Poly& u) {
    Poly r;
    for (const auto& [e, c] : u)
      if (e.first > 0) r[{e.first - 1, e.second}] += c * e.first;
    return r;
  };
  auto dy = [](const Poly& u) {
    Poly r;
    for (const auto& [e, c] : u)
      if (e.second > 0) r[{e.first, e.second - 1}] += c * e.second;
    return r;
  };
  std::vector<Poly> w;
  for (int n = 2; n <= N; ++n)
    for (int a = n; a >= 0; --a) {
      const int b = n - a;
      Poly p{{{a, b}, 1.0L}};
      if (b == 0) p[{1, 0}] -= 1.0L;
      if (a == 0) p[{0, 1}] -= 1.0L;
      w.push_back(p);
    }
  const auto n = static_cast<Eigen::Index>(w.size());
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat A(n, n), B(n, n);
  std::vector<Poly> wx, wy, wxx, wxy, wyy;
  for (const auto& p : w) {
    wx.push_back(dx(p));
    wy.push_back(dy(p));
    wxx.push_back(dx(wx.back()));
    wxy.push_back(dy(wx.back()));
    wyy.push_back(dy(wy.back()));
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      A(i, j) = inner(wx[i], wx[j]) + inner(wy[i], wy[j]);
      B(i, j) = inner(wxx[i], wxx[j]) + 2.0L * inner(wxy[i], wxy[j]) + inner(wyy[i], wyy[j]);
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(A, B);
  return std::sqrt(static_cast<double>(es.eigenvalues().maxCoeff()));
}

Outcome rayleigh_oracle() {
  const auto est = estimate_B_rayleigh(reference_simplex(2), 1, 1, 5);
  const double oracle = oracle_B211(9);
  const double rel = std::abs(est.value - oracle) / oracle;
  return {rel <= 0.05, "rayleigh " + num(est.value) + ", oracle " + num(oracle) + ", relative gap " + num(rel)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path mesh = fs::temp_directory_path() / "simplexinterp_acceptance_mesh.json";
  {
    std::ofstream out(mesh);
    out << R"({"dimension":2,"vertices":[[0,0],[1,0],[0,1],[1,1],[0.5,0.01]],)"
        << R"("cells":[[0,1,2],[1,3,2],[0,1,4]]})";
  }
  std::vector<StudyConfig> configs;
  StudyConfig c;
  c.command = Command::squeeze;
  c.alpha_min_exp = 6;
  configs.push_back(c);
  c.d = 3;
  c.k = 2;
  c.method = "sampling";
  c.p = 3.0;
  c.probe_count = 20;
  configs.push_back(c);
  c = StudyConfig{};
  c.command = Command::scaling;
  c.alpha_min_exp = 5;
  c.probe_count = 20;
  c.p = kInf;
  configs.push_back(c);
  c = StudyConfig{};
  c.command = Command::constants;
  c.k = 2;
  c.r = 2;
  configs.push_back(c);
  c.p = 3.0;
  c.probe_count = 8;
  configs.push_back(c);
  c = StudyConfig{};
  c.command = Command::diffquot_verify;
  c.d = 3;
  c.k = 3;
  c.probe_count = 10;
  configs.push_back(c);
  c = StudyConfig{};
  c.command = Command::mesh_metrics;
  c.mesh_path = mesh.string();
  configs.push_back(c);

  Outcome out;
  for (auto cfg : configs) {
    cfg.threads = 1;
    const std::string a = run_study(cfg);
    const std::string b = run_study(cfg);
    cfg.threads = 4;
    const std::string e = run_study(cfg);
    if (a != b || a != e) {
      out.pass = false;
      out.detail += " [" + to_string(cfg.command) + " differs]";
    }
  }
  fs::remove(mesh);
  out.detail = std::to_string(configs.size()) + " configurations, threads 1 and 4" + out.detail;
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"interpolation exactness", interpolation_exactness},
      {"difference-quotient triple identity", triple_identity},
      {"annihilation of v - Iv on boxes", annihilation},
      {"box counts and moment nonsingularity", box_moments},
      {"split, decomposition and squeeze identities", seminorm_identities},
      {"squeeze boundedness study", squeeze_boundedness},
      {"circumradius scaling study", circumradius_scaling},
      {"rayleigh vs independent oracle", rayleigh_oracle},
      {"deterministic CSV", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu %s: %s (%s; %.1fs)\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
