#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simplexinterp/geometry.hpp"

namespace simplexinterp {

const char* version();

enum class Command { squeeze, scaling, constants, diffquot_verify, mesh_metrics };

std::string to_string(Command c);
Command parse_command(const std::string& text);

struct StudyConfig {
  Command command = Command::squeeze;
  int d = 2;
  int k = 1;
  int m = 1;
  double p = 2.0;
  /// α runs over 2^0 .. 2^-alpha_min_exp; scaling uses it for the needle and
  /// cap families.
  int alpha_min_exp = 10;
  /// d = 3 squeezes: unset means β = α ("equal").
  std::optional<double> beta;
  int r = 3;
  /// Unset: 200 for squeeze and scaling, 64 for constants, 50 for
  /// diffquot-verify.
  std::optional<int> probe_count;
  /// 0 picks the exactness from the integrand degree.
  int quad_exactness = 0;
  std::uint64_t seed = 0;
  /// rayleigh | sampling; empty picks rayleigh for p = 2, sampling otherwise.
  std::string method;
  /// constants: B | A | both.
  std::string target = "both";
  /// mesh-metrics: cells with R/h above this are flagged.
  double semiregularity_threshold = 10.0;
  bool allow_degenerate = false;
  std::string mesh_path;
  std::string output_path;
  /// Not part of the echo: output must not depend on it.
  int threads = 1;
};

/// Throws InvalidArgument naming the first violated precondition.
void validate(const StudyConfig& cfg);

/// probe_count and method with defaults filled in.
int resolved_probe_count(const StudyConfig& cfg);
std::string resolved_method(const StudyConfig& cfg);

/// "# simplexinterp <version> command=... key=value ..." without output
/// path and thread count.
std::string config_echo(const StudyConfig& cfg);

struct MeshFile {
  int dimension = 2;
  std::vector<Point> vertices;
  std::vector<std::vector<int>> cells;
};

/// Parses {"dimension":d,"vertices":[[...]],"cells":[[...]]}. Errors carry
/// the offending field and, for JSON syntax errors, line and column.
MeshFile parse_mesh(const std::string& text, const std::string& source = "<mesh>");
MeshFile load_mesh(const std::string& path);

/// Index ranges, cell arity and (unless allowed) nondegeneracy.
void validate_mesh(const MeshFile& mesh, bool allow_degenerate);

std::string run_squeeze(const StudyConfig& cfg);
std::string run_scaling(const StudyConfig& cfg, std::vector<std::string>* notes = nullptr);
std::string run_constants(const StudyConfig& cfg);
std::string run_diffquot_verify(const StudyConfig& cfg);
std::string run_mesh_metrics(const StudyConfig& cfg, const MeshFile& mesh);

/// Dispatch on cfg.command; mesh-metrics loads cfg.mesh_path. Skipped
/// elements are also appended to `notes` when given.
std::string run_study(const StudyConfig& cfg, std::vector<std::string>* notes = nullptr);

/// 17 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x);

}  // namespace simplexinterp
