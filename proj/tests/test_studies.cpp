#include <doctest.h>

#include <cmath>
#include <sstream>

#include "simplexinterp/errors.hpp"
#include "simplexinterp/norms.hpp"
#include "simplexinterp/studies.hpp"

using namespace simplexinterp;

namespace {

std::vector<std::string> lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Naive split; fine for rows without quoted fields.
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(kInf) == "inf");
  CHECK(format_number(-kInf) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("config validation names the violated precondition") {
  StudyConfig c;
  CHECK_NOTHROW(validate(c));
  auto rejects = [](StudyConfig cfg, const std::string& needle) {
    try {
      validate(cfg);
    } catch (const InvalidArgument& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  StudyConfig bad = c;
  bad.d = 4;
  CHECK(rejects(bad, "d must be"));
  bad = c;
  bad.m = 2;
  CHECK(rejects(bad, "m must"));
  bad = c;
  bad.p = 3.0;
  bad.method = "rayleigh";
  CHECK(rejects(bad, "rayleigh method needs p = 2"));
  bad = c;
  bad.beta = 0.5;
  CHECK(rejects(bad, "beta applies"));
  bad = c;
  bad.command = Command::scaling;
  bad.d = 3;
  CHECK(rejects(bad, "d must be 2"));
  bad = c;
  bad.r = 8;
  CHECK(rejects(bad, "k + r"));
  bad = c;
  bad.method = "newton";
  CHECK(rejects(bad, "method must"));
  bad = c;
  bad.command = Command::mesh_metrics;
  CHECK(rejects(bad, "mesh file"));
  CHECK(parse_command("diffquot-verify") == Command::diffquot_verify);
  CHECK_THROWS_AS(parse_command("plot"), InvalidArgument);
}

TEST_CASE("squeeze CSV layout") {
  StudyConfig c;
  const auto csv = run_squeeze(c);
  const auto ls = lines(csv);
  REQUIRE(ls.size() == 1 + 1 + 11 + 1);
  CHECK(ls[0].rfind("# simplexinterp ", 0) == 0);
  CHECK(ls[0].find("seed=0") != std::string::npos);
  CHECK(ls[0].find("threads") == std::string::npos);
  CHECK(ls[1] == "alpha,beta,d,k,m,p,method,estimate,r,seed,theory_valid,loglog_slope_running");
  CHECK(ls.back().rfind("#footer,slope,", 0) == 0);
  const auto first = split(ls[2]);
  CHECK(first[0] == "1");
  CHECK(first[6] == "rayleigh");
  CHECK(first[11].empty());
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(run_squeeze(c) == csv);
  c.threads = 3;
  CHECK(run_squeeze(c) == csv);
}

TEST_CASE("scaling CSV") {
  StudyConfig c;
  c.command = Command::scaling;
  c.alpha_min_exp = 10;
  c.probe_count = 20;
  const auto ls = lines(run_scaling(c));
  // 4 equilateral + 11 needles + 10 caps.
  REQUIRE(ls.size() == 2 + 25 + 1);
  const auto header = split(ls[1]);
  CHECK(header[8] == "h");
  CHECK(header[16] == "rho_obs");
  const auto eq = split(ls[2]);
  CHECK(std::stod(eq[9]) / std::stod(eq[8]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  const auto cap = split(ls[ls.size() - 2]);
  CHECK(cap[0] == "cap");
  CHECK(std::stod(cap[9]) / std::stod(cap[8]) > 100.0);
}

TEST_CASE("diffquot-verify CSV") {
  StudyConfig c;
  c.command = Command::diffquot_verify;
  c.k = 4;
  c.probe_count = 5;
  const auto ls = lines(run_diffquot_verify(c));
  int rows = 0;
  for (std::size_t i = 2; i + 1 < ls.size(); ++i) {
    // Quoted δ shifts the naive split by d − 1 fields.
    const auto f = split(ls[i]);
    const std::size_t o = 1;
    CHECK(f[3 + o] == f[4 + o]);
    for (std::size_t j = 5 + o; j <= 7 + o; ++j) CHECK(std::stod(f[j]) <= 1e-8);
    CHECK(std::stod(f[8 + o]) > 1e-8);
    ++rows;
  }
  CHECK(rows == 2 + 3 + 4 + 5 + 2 + 3 + 4 + 2 + 3 + 2);
}

TEST_CASE("constants CSV carries one row per trace point") {
  StudyConfig c;
  c.command = Command::constants;
  c.k = 2;
  c.r = 2;
  const auto ls = lines(run_constants(c));
  // B: 2 rows; A: δ ∈ {(0,1),(1,0),(0,2),(1,1),(2,0)}, 2 rows each.
  CHECK(ls.size() == 2 + 2 + 10);
  CHECK(ls[2].rfind("B,2,2,1,,2,rayleigh,reference,1,", 0) == 0);
  CHECK(ls[4].rfind("A,2,2,,\"(0,1)\",2,", 0) == 0);
}

TEST_CASE("mesh parsing") {
  const auto m = parse_mesh(R"({"dimension":2,"vertices":[[0,0],[1,0],[0,1],[1,1]],"cells":[[0,1,2],[1,3,2]]})");
  CHECK(m.dimension == 2);
  CHECK(m.vertices.size() == 4);
  CHECK(m.cells.size() == 2);
  CHECK_NOTHROW(validate_mesh(m, false));

  auto message = [](const std::string& text) {
    try {
      parse_mesh(text, "t.json");
    } catch (const IoError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{\"dimension\":2,\n\"vertices\":[[0,0]\n}").find("line 3") != std::string::npos);
  CHECK(message(R"({"dimension":2,"vertices":[[0,0,1]],"cells":[]})").find("vertices[0]") != std::string::npos);
  CHECK(message(R"({"dimension":2,"vertices":[],"cells":[[0,"a",1]]})").find("cells[0][1]") != std::string::npos);
  CHECK(message(R"({"vertices":[],"cells":[]})").find("dimension") != std::string::npos);

  const auto bad = parse_mesh(R"({"dimension":2,"vertices":[[0,0],[1,0],[2,0]],"cells":[[0,1,3]]})");
  CHECK_THROWS_AS(validate_mesh(bad, false), InvalidArgument);
  const auto flat = parse_mesh(R"({"dimension":2,"vertices":[[0,0],[1,0],[2,0]],"cells":[[0,1,2]]})");
  CHECK_THROWS_AS(validate_mesh(flat, false), InvalidArgument);
  CHECK_NOTHROW(validate_mesh(flat, true));
  CHECK_THROWS_AS(load_mesh("/nonexistent/mesh.json"), IoError);
}

TEST_CASE("mesh metrics CSV") {
  StudyConfig c;
  c.command = Command::mesh_metrics;
  c.mesh_path = "inline";
  const auto ref = parse_mesh(R"({"dimension":2,"vertices":[[0,0],[1,0],[0,1]],"cells":[[0,1,2]]})");
  const auto ls = lines(run_mesh_metrics(c, ref));
  REQUIRE(ls.size() == 4);
  CHECK(ls[1] == "id,h,rho,R,chunkiness,semiregularity,max_angle,theta_jamet,predicted_coeff,flagged");
  const auto f = split(ls[2]);
  CHECK(std::stod(f[1]) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::stod(f[3]) == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(f.back() == "false");

  const auto two = parse_mesh(
      R"({"dimension":2,"vertices":[[0,0],[1,0],[0,1],[0.5,0.001]],"cells":[[0,1,2],[0,1,3]]})");
  const auto l2 = lines(run_mesh_metrics(c, two));
  REQUIRE(l2.size() == 5);
  CHECK(l2[2].rfind("0,", 0) == 0);
  CHECK(l2[3].rfind("1,", 0) == 0);
  CHECK(split(l2[3]).back() == "true");

  const auto tet = parse_mesh(R"({"dimension":3,"vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]],"cells":[[0,1,2,3]]})");
  CHECK(lines(run_mesh_metrics(c, tet))[1].find("max_face_angle,max_dihedral") != std::string::npos);
}
