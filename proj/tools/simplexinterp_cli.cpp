// simplexinterp: interpolation-constant studies on simplices, CSV out.
//
//   simplexinterp squeeze --d 2 --k 1 --m 1 --p 2
//   simplexinterp scaling --k 2 --m 1 --p inf -o scaling.csv
//   simplexinterp constants --k 2 --m 1 --target A
//   simplexinterp diffquot-verify --d 3 --k 4
//   simplexinterp mesh-metrics mesh.json --k 1 --m 1
//
// Exit status: 0 success, 2 invalid input, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "simplexinterp/errors.hpp"
#include "simplexinterp/norms.hpp"
#include "simplexinterp/parallel.hpp"
#include "simplexinterp/studies.hpp"

namespace si = simplexinterp;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct RawFlags {
  std::string p = "2";
  std::string beta = "equal";
  int probes = -1;
};

void add_common(CLI::App* sub, si::StudyConfig& cfg, RawFlags& raw) {
  sub->add_option("--d", cfg.d, "spatial dimension (2 or 3)")->capture_default_str();
  sub->add_option("--k", cfg.k, "interpolation order")->capture_default_str();
  sub->add_option("--m", cfg.m, "seminorm order of the error")->capture_default_str();
  sub->add_option("--p", raw.p, "Lebesgue exponent, a number >= 1 or inf")->capture_default_str();
  sub->add_option("--r", cfg.r, "probe excess degree")->capture_default_str();
  sub->add_option("--probes", raw.probes, "random probe count (default depends on the command)");
  sub->add_option("--quad-exactness", cfg.quad_exactness, "quadrature exactness, 0 = automatic")
      ->capture_default_str();
  sub->add_option("--seed", cfg.seed, "probe RNG seed")->capture_default_str();
  sub->add_option("-o,--output", cfg.output_path, "CSV output path (default stdout)");
}

void write_output(const std::string& path, const std::string& csv) {
  if (path.empty()) {
    std::cout << csv;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw si::IoError("cannot open output file '" + path + "'");
  out << csv;
  out.close();
  if (!out) throw si::IoError("write error on output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrange interpolation constants on squeezed and anisotropic simplices"};
  app.set_version_flag("--version", std::string(si::version()));
  app.require_subcommand(1);

  si::StudyConfig cfg;
  RawFlags raw;

  auto* squeeze = app.add_subcommand("squeeze", "B estimates on K_alpha / K_alphabeta over dyadic alpha");
  add_common(squeeze, cfg, raw);
  squeeze->add_option("--alpha-min-exp", cfg.alpha_min_exp, "alpha runs down to 2^-n")->capture_default_str();
  squeeze->add_option("--beta", raw.beta, "d=3: 'equal' or a fixed beta")->capture_default_str();
  squeeze->add_option("--method", cfg.method, "rayleigh | sampling (default: rayleigh iff p = 2)");

  auto* scaling = app.add_subcommand("scaling", "circumradius-normalized ratios on needles and caps");
  add_common(scaling, cfg, raw);
  scaling->add_option("--alpha-min-exp", cfg.alpha_min_exp, "needles and caps down to 2^-n")->capture_default_str();

  auto* constants = app.add_subcommand("constants", "B on the reference simplex and A for every delta");
  add_common(constants, cfg, raw);
  constants->add_option("--method", cfg.method, "rayleigh | sampling for B");
  constants->add_option("--target", cfg.target, "B | A | both")->capture_default_str();

  auto* diffquot = app.add_subcommand("diffquot-verify", "difference-quotient identities and box moments");
  add_common(diffquot, cfg, raw);

  auto* mesh = app.add_subcommand("mesh-metrics", "per-cell shape metrics of a JSON mesh");
  add_common(mesh, cfg, raw);
  mesh->add_option("mesh", cfg.mesh_path, "mesh JSON file")->required();
  mesh->add_option("--semiregularity-threshold", cfg.semiregularity_threshold, "flag cells with R/h above this")
      ->capture_default_str();
  mesh->add_flag("--allow-degenerate", cfg.allow_degenerate, "report degenerate cells instead of rejecting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    cfg.command = si::parse_command(app.get_subcommands().front()->get_name());
    cfg.p = si::parse_exponent(raw.p);
    if (raw.beta != "equal") {
      std::size_t used = 0;
      double b = 0.0;
      try {
        b = std::stod(raw.beta, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != raw.beta.size()) throw si::InvalidArgument("--beta must be 'equal' or a number, got '" + raw.beta + "'");
      cfg.beta = b;
    }
    if (raw.probes >= 0) cfg.probe_count = raw.probes;
    cfg.threads = si::default_thread_count();

    std::vector<std::string> notes;
    const std::string csv = si::run_study(cfg, &notes);
    for (const auto& n : notes) std::cerr << "simplexinterp: " << n << "\n";
    write_output(cfg.output_path, csv);
  } catch (const si::InvalidArgument& e) {
    std::cerr << "simplexinterp: invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const si::IoError& e) {
    std::cerr << "simplexinterp: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const si::NumericalError& e) {
    std::cerr << "simplexinterp: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
