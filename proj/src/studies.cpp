#include "simplexinterp/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "simplexinterp/constants.hpp"
#include "simplexinterp/diffquot.hpp"
#include "simplexinterp/errors.hpp"
#include "simplexinterp/lagrange.hpp"
#include "simplexinterp/norms.hpp"
#include "simplexinterp/parallel.hpp"
#include "simplexinterp/quadrature.hpp"

#ifndef SIMPLEXINTERP_VERSION
#define SIMPLEXINTERP_VERSION "0.0.0"
#endif

namespace simplexinterp {

namespace {

// RFC 4180 rows with LF endings; comment lines start with '#'.
class CsvWriter {
 public:
  void comment(const std::string& line) { out_ += line + "\n"; }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ += ',';
      out_ += quote(fields[i]);
    }
    out_ += '\n';
  }

  // "#footer,key,value,..." so readers that skip comments skip it too.
  void footer(const std::vector<std::pair<std::string, std::string>>& kv) {
    out_ += "#footer";
    for (const auto& [k, v] : kv) out_ += "," + quote(k) + "," + quote(v);
    out_ += '\n';
  }

  std::string str() const { return out_; }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  std::string out_;
};

std::string fmt(double x) { return format_number(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(bool b) { return b ? "true" : "false"; }

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

// Per-row seeds so that rows can run in any order.
std::uint64_t row_seed(std::uint64_t seed, std::size_t row) { return seed + 0x9E3779B97F4A7C15ULL * (row + 1); }

CsvWriter start(const StudyConfig& cfg) {
  CsvWriter w;
  w.comment(config_echo(cfg));
  return w;
}

}  // namespace

const char* version() { return SIMPLEXINTERP_VERSION; }

std::string to_string(Command c) {
  switch (c) {
    case Command::squeeze: return "squeeze";
    case Command::scaling: return "scaling";
    case Command::constants: return "constants";
    case Command::diffquot_verify: return "diffquot-verify";
    case Command::mesh_metrics: return "mesh-metrics";
  }
  return "?";
}

Command parse_command(const std::string& text) {
  for (auto c : {Command::squeeze, Command::scaling, Command::constants, Command::diffquot_verify,
                 Command::mesh_metrics})
    if (to_string(c) == text) return c;
  throw InvalidArgument("unknown command '" + text + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int resolved_probe_count(const StudyConfig& cfg) {
  if (cfg.probe_count) return *cfg.probe_count;
  switch (cfg.command) {
    case Command::constants: return 64;
    case Command::diffquot_verify: return 50;
    default: return 200;
  }
}

std::string resolved_method(const StudyConfig& cfg) {
  if (!cfg.method.empty()) return cfg.method;
  return cfg.p == 2.0 ? "rayleigh" : "sampling";
}

void validate(const StudyConfig& cfg) {
  require(cfg.d == 2 || cfg.d == 3, "d must be 2 or 3");
  require(cfg.k >= 1 && cfg.k <= kMaxLagrangeOrder, "k must lie in [1, " + std::to_string(kMaxLagrangeOrder) + "]");
  require(cfg.m >= 0 && cfg.m <= cfg.k, "m must lie in [0, k]");
  require(cfg.p >= 1.0 && !std::isnan(cfg.p), "p must be >= 1 or inf");
  require(cfg.alpha_min_exp >= 0 && cfg.alpha_min_exp <= 30, "alpha-min-exp must lie in [0, 30]");
  if (cfg.beta) {
    require(cfg.d == 3, "beta applies to d = 3 only");
    require(*cfg.beta > 0.0 && *cfg.beta <= 1.0, "beta must lie in (0, 1]");
  }
  require(cfg.r >= 1, "r must be at least 1");
  require(cfg.k + cfg.r <= kMaxPolynomialDegree, "k + r must not exceed " + std::to_string(kMaxPolynomialDegree));
  const int count = resolved_probe_count(cfg);
  require(count >= 0 && count <= 100000, "probe count must lie in [0, 100000]");
  require(cfg.quad_exactness >= 0 && cfg.quad_exactness <= kMaxQuadratureExactness,
          "quad exactness must lie in [0, " + std::to_string(kMaxQuadratureExactness) + "]");
  const std::string method = resolved_method(cfg);
  require(method == "rayleigh" || method == "sampling", "method must be rayleigh or sampling");
  const bool uses_method = cfg.command == Command::squeeze || cfg.command == Command::constants;
  if (uses_method && method == "rayleigh") {
    require(cfg.p == 2.0, "the rayleigh method needs p = 2");
    require(cfg.k + cfg.r <= 8, "rayleigh probes need k + r <= 8");
  }
  require(cfg.target == "B" || cfg.target == "A" || cfg.target == "both", "target must be B, A or both");
  require(cfg.semiregularity_threshold > 0.0, "semiregularity threshold must be positive");
  switch (cfg.command) {
    case Command::squeeze:
      break;
    case Command::scaling:
      require(cfg.d == 2, "scaling runs on triangles: d must be 2");
      require(cfg.alpha_min_exp >= 1, "scaling needs alpha-min-exp >= 1");
      require(cfg.k + cfg.r <= 8, "scaling adds rayleigh extremals: k + r <= 8");
      break;
    case Command::constants:
      break;
    case Command::diffquot_verify:
      require(cfg.k + 3 <= kMaxPolynomialDegree, "annihilation probes need k + 3 within the degree cap");
      break;
    case Command::mesh_metrics:
      require(!cfg.mesh_path.empty(), "mesh-metrics needs a mesh file");
      break;
  }
  require(cfg.threads >= 1, "thread count must be positive");
}

std::string config_echo(const StudyConfig& cfg) {
  std::ostringstream os;
  os << "# simplexinterp " << version() << " command=" << to_string(cfg.command) << " d=" << cfg.d
     << " k=" << cfg.k << " m=" << cfg.m << " p=" << format_exponent(cfg.p) << " alpha_min_exp=" << cfg.alpha_min_exp
     << " beta=" << (cfg.beta ? format_number(*cfg.beta) : std::string("equal")) << " r=" << cfg.r
     << " probe_count=" << resolved_probe_count(cfg) << " quad_exactness=" << cfg.quad_exactness
     << " seed=" << cfg.seed << " method=" << resolved_method(cfg) << " target=" << cfg.target
     << " semiregularity_threshold=" << format_number(cfg.semiregularity_threshold)
     << " allow_degenerate=" << fmt(cfg.allow_degenerate);
  if (cfg.command == Command::mesh_metrics) os << " mesh=" << cfg.mesh_path;
  return os.str();
}

std::string run_squeeze(const StudyConfig& cfg) {
  validate(cfg);
  SqueezeOptions o;
  o.d = cfg.d;
  o.k = cfg.k;
  o.m = cfg.m;
  o.p = cfg.p;
  o.alphas = dyadic_alphas(cfg.alpha_min_exp);
  o.beta = cfg.beta;
  o.method = parse_method(resolved_method(cfg));
  o.r = cfg.r;
  o.exactness = cfg.quad_exactness;
  o.probe_count = resolved_probe_count(cfg);
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  if (o.method == EstimateMethod::sampling && o.k + o.r > 8) o.extremal_count = 0;
  const SqueezeStudy s = squeeze_boundedness_study(o);

  CsvWriter w = start(cfg);
  w.row({"alpha", "beta", "d", "k", "m", "p", "method", "estimate", "r", "seed", "theory_valid",
         "loglog_slope_running"});
  for (const auto& row : s.rows) {
    w.row({fmt(row.alpha), cfg.d == 3 ? fmt(row.beta) : "", fmt(cfg.d), fmt(cfg.k), fmt(cfg.m), format_exponent(cfg.p),
           to_string(o.method), fmt(row.estimate.value), fmt(cfg.r), std::to_string(cfg.seed),
           fmt(row.estimate.theory_valid), row.running_slope ? fmt(*row.running_slope) : ""});
  }
  w.footer({{"slope", fmt(s.slope)},
            {"max_min_ratio", fmt(s.max_min_ratio)},
            {"chunkiness_slope", fmt(s.chunkiness_slope)},
            {"chunkiness_tail_slope", fmt(s.chunkiness_tail_slope)},
            {"theory_valid", fmt(s.theory_valid)}});
  return w.str();
}

std::string run_scaling(const StudyConfig& cfg, std::vector<std::string>* notes) {
  validate(cfg);
  ScalingOptions o;
  o.k = cfg.k;
  o.m = cfg.m;
  o.p = cfg.p;
  o.r = cfg.r;
  o.probe_count = resolved_probe_count(cfg);
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  o.triangles = default_scaling_family(cfg.alpha_min_exp);
  const ScalingStudy s = circumradius_scaling_study(o);

  CsvWriter w = start(cfg);
  w.row({"family", "parameter", "x0", "y0", "x1", "y1", "x2", "y2", "h", "R", "rho", "max_angle", "theta_jamet", "k",
         "m", "p", "rho_obs", "raw_ratio", "status"});
  int skipped = 0;
  for (const auto& row : s.rows) {
    std::vector<std::string> f{row.triangle.family, fmt(row.triangle.parameter)};
    for (const auto& v : row.triangle.vertices) {
      f.push_back(fmt(v[0]));
      f.push_back(fmt(v[1]));
    }
    const auto& g = row.geometry;
    for (double x : {g.h, g.R, g.rho, g.max_angle, g.theta_jamet}) f.push_back(row.skipped ? "" : fmt(x));
    f.insert(f.end(), {fmt(cfg.k), fmt(cfg.m), format_exponent(cfg.p)});
    if (row.skipped) {
      ++skipped;
      f.insert(f.end(), {"", "", "skipped: " + row.reason});
      if (notes) notes->push_back(row.triangle.family + " " + fmt(row.triangle.parameter) + " skipped: " + row.reason);
    } else {
      f.insert(f.end(), {fmt(row.rho_obs), fmt(row.raw_ratio), "ok"});
    }
    w.row(f);
  }
  w.footer({{"max_rho_obs", fmt(s.max_rho_obs)},
            {"min_rho_obs", fmt(s.min_rho_obs)},
            {"needle_cap_ratio", fmt(s.needle_cap_ratio)},
            {"equilateral_spread", fmt(s.equilateral_spread)},
            {"skipped", fmt(skipped)}});
  return w.str();
}

std::string run_constants(const StudyConfig& cfg) {
  validate(cfg);
  const std::string method = resolved_method(cfg);
  const int count = resolved_probe_count(cfg);
  std::vector<MultiIndex> deltas;
  if (cfg.target != "B")
    for (int n = 1; n <= cfg.k; ++n)
      for (const auto& delta : enumerate_order(cfg.d, n)) deltas.push_back(delta);
  const bool with_b = cfg.target != "A";
  std::vector<ConstantEstimate> results(deltas.size() + (with_b ? 1 : 0));
  parallel_for(results.size(), cfg.threads, [&](std::size_t i) {
    if (with_b && i == 0) {
      const Simplex ref = reference_simplex(cfg.d);
      if (method == "rayleigh") {
        results[0] = estimate_B_rayleigh(ref, cfg.k, cfg.m, cfg.r, cfg.quad_exactness, "reference");
        results[0].seed = cfg.seed;
      } else {
        auto family = ProbeFamily::reference(ref, cfg.k, cfg.r, count, cfg.seed);
        if (cfg.k + cfg.r <= 8) family.add_extremals(ref, cfg.k, cfg.m, cfg.r, 4);
        results[0] = estimate_B_sampling(ref, cfg.k, cfg.m, cfg.p, family, "reference");
      }
      return;
    }
    const std::size_t j = i - (with_b ? 1 : 0);
    results[i] = estimate_A(deltas[j], cfg.k, cfg.p, cfg.r, count, row_seed(cfg.seed, j));
  });

  CsvWriter w = start(cfg);
  w.row({"target", "d", "k", "m", "delta", "p", "method", "simplex", "r", "value", "exactness", "seed", "theory_valid",
         "constraint_residual"});
  for (const auto& e : results) {
    const bool is_b = e.target == ConstantTarget::B;
    for (const auto& t : e.trace) {
      w.row({to_string(e.target), fmt(e.d), fmt(e.k), is_b ? fmt(e.m) : "", is_b ? "" : e.delta.to_string(),
             format_exponent(e.p), to_string(e.method), e.simplex, fmt(t.r), fmt(t.value), fmt(e.exactness),
             std::to_string(cfg.seed), fmt(e.theory_valid), is_b ? "" : fmt(e.constraint_residual)});
    }
  }
  return w.str();
}

namespace {

struct DiffquotRow {
  int k = 0;
  MultiIndex delta;
  double recursion = 0.0;
  double representation = 0.0;
  double annihilation = 0.0;
  int boxes = 0;
  double sigma_min = 0.0;
};

void verify_row(DiffquotRow& row, int d, int count, int quad, std::uint64_t seed) {
  const int k = row.k;
  const MultiIndex& delta = row.delta;
  const int n = delta.order();
  Rng rng(seed);
  const auto anchors = enumerate_up_to(d, k - n);
  std::vector<MultiIndex> etas;
  for (int i = 0; i < d; ++i)
    if (delta[i] > 0) etas.push_back(MultiIndex::unit(d, i));
  const LagrangeBasis basis(reference_simplex(d), k);
  for (int t = 0; t < count; ++t) {
    // Quotient identities on degree-8 probes.
    const Polynomial f = random_polynomial(d, 0, 8, rng);
    const auto field = f.as_field();
    const double scale = f.derivative(delta).max_abs_coeff() / static_cast<double>(delta.factorial());
    for (const auto& gamma : anchors) {
      const double dq = diff_quotient(field, k, gamma, delta);
      for (const auto& eta : etas) {
        const double rq = diff_quotient_recursive(field, k, gamma, delta, eta).value;
        const double s = std::max({std::abs(dq), std::abs(rq), scale});
        row.recursion = std::max(row.recursion, s > 0.0 ? std::abs(dq - rq) / s : std::abs(dq - rq));
      }
      row.representation =
          std::max(row.representation, integral_representation_check(f, k, gamma, delta, quad > 0 ? quad : 8 - n));
    }
    // Annihilation on residuals of degree k+3 probes.
    const Polynomial v = random_polynomial(d, 0, k + 3, rng);
    double vs = 0.0;
    for (const auto& node : basis.nodes()) vs = std::max(vs, std::abs(v(node.point)));
    if (vs == 0.0) vs = 1.0;
    const auto du = (v - basis.interpolate(v)).derivative(delta).as_field();
    for (const auto& box : enumerate_boxes(k, delta))
      row.annihilation = std::max(row.annihilation, std::abs(box_integral(du, box, quad > 0 ? quad : k + 3 - n)) / vs);
  }
  row.boxes = static_cast<int>(enumerate_boxes(k, delta).size());
  row.sigma_min = box_moment_matrix(k, delta, quad > 0 ? quad : k - n).sigma_min;
}

}  // namespace

std::string run_diffquot_verify(const StudyConfig& cfg) {
  validate(cfg);
  const int count = resolved_probe_count(cfg);
  std::vector<DiffquotRow> rows;
  for (int k = 1; k <= cfg.k; ++k)
    for (int n = 1; n <= k; ++n)
      for (const auto& delta : enumerate_order(cfg.d, n)) rows.push_back({k, delta});
  parallel_for(rows.size(), cfg.threads,
               [&](std::size_t i) { verify_row(rows[i], cfg.d, count, cfg.quad_exactness, row_seed(cfg.seed, i)); });

  CsvWriter w = start(cfg);
  w.row({"d", "k", "delta", "box_count", "expected_box_count", "recursion_max", "representation_max",
         "annihilation_max", "sigma_min"});
  double worst = 0.0, smin = kInf;
  for (const auto& r : rows) {
    const auto expected = binomial(r.k - r.delta.order() + cfg.d, cfg.d);
    w.row({fmt(cfg.d), fmt(r.k), r.delta.to_string(), fmt(r.boxes), std::to_string(expected), fmt(r.recursion),
           fmt(r.representation), fmt(r.annihilation), fmt(r.sigma_min)});
    worst = std::max({worst, r.recursion, r.representation, r.annihilation});
    smin = std::min(smin, r.sigma_min);
  }
  w.footer({{"max_discrepancy", fmt(worst)}, {"min_sigma", fmt(smin)}});
  return w.str();
}

std::string run_mesh_metrics(const StudyConfig& cfg, const MeshFile& mesh) {
  validate(cfg);
  validate_mesh(mesh, cfg.allow_degenerate);
  const int d = mesh.dimension;
  std::vector<GeometryReport> reports(mesh.cells.size());
  parallel_for(mesh.cells.size(), cfg.threads, [&](std::size_t i) {
    std::vector<Point> v;
    for (int idx : mesh.cells[i]) v.push_back(mesh.vertices[static_cast<std::size_t>(idx)]);
    const Simplex K(d, v, cfg.allow_degenerate ? DegeneracyPolicy::allow : DegeneracyPolicy::reject);
    JametOptions jamet;
    jamet.enabled = !K.degenerate();
    reports[i] = geometry_report(K, jamet);
  });

  CsvWriter w = start(cfg);
  std::vector<std::string> head{"id", "h", "rho", "R", "chunkiness", "semiregularity", "max_angle"};
  if (d == 3) head.insert(head.end(), {"max_face_angle", "max_dihedral"});
  head.insert(head.end(), {"theta_jamet", "predicted_coeff", "flagged"});
  w.row(head);
  int flagged = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& g = reports[i];
    const double coeff = std::pow(g.R, cfg.m) * std::pow(g.h, cfg.k + 1 - 2 * cfg.m);
    const bool flag = g.degenerate || !(g.semiregularity <= cfg.semiregularity_threshold);
    flagged += flag;
    worst = std::max(worst, g.semiregularity);
    std::vector<std::string> f{std::to_string(i), fmt(g.h), fmt(g.rho), fmt(g.R), fmt(g.chunkiness),
                               fmt(g.semiregularity), fmt(g.max_angle)};
    if (d == 3) f.insert(f.end(), {fmt(g.max_face_angle), fmt(g.max_dihedral_angle)});
    f.insert(f.end(), {fmt(g.theta_jamet), fmt(coeff), fmt(flag)});
    w.row(f);
  }
  w.footer({{"cells", fmt(static_cast<int>(reports.size()))},
            {"flagged", fmt(flagged)},
            {"max_semiregularity", fmt(worst)}});
  return w.str();
}

std::string run_study(const StudyConfig& cfg, std::vector<std::string>* notes) {
  switch (cfg.command) {
    case Command::squeeze: return run_squeeze(cfg);
    case Command::scaling: return run_scaling(cfg, notes);
    case Command::constants: return run_constants(cfg);
    case Command::diffquot_verify: return run_diffquot_verify(cfg);
    case Command::mesh_metrics:
      validate(cfg);
      return run_mesh_metrics(cfg, load_mesh(cfg.mesh_path));
  }
  throw InvalidArgument("unknown command");
}

}  // namespace simplexinterp
