#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simplexinterp/constants.hpp"
#include "simplexinterp/diffquot.hpp"
#include "simplexinterp/errors.hpp"
#include "simplexinterp/lagrange.hpp"
#include "simplexinterp/norms.hpp"
#include "simplexinterp/studies.hpp"

namespace py = pybind11;
namespace si = simplexinterp;

namespace {

// Points cross the boundary as length-d sequences.
si::Point to_point(const std::vector<double>& x) {
  if (x.size() < 2 || x.size() > 3) throw si::InvalidArgument("points need 2 or 3 coordinates");
  si::Point p{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i];
  return p;
}

std::vector<double> from_point(const si::Point& p, int d) { return {p.begin(), p.begin() + d}; }

si::MultiIndex to_index(const std::vector<int>& v) {
  if (v.empty() || v.size() > si::MultiIndex::kMaxArity) throw si::InvalidArgument("multi-index arity must be 1..4");
  si::MultiIndex m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, v[i]);
  return m;
}

std::vector<int> from_index(const si::MultiIndex& m) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m.arity(); ++i) out.push_back(m[i]);
  return out;
}

si::Simplex make_simplex(const std::vector<std::vector<double>>& vertices, bool allow_degenerate) {
  const auto d = static_cast<int>(vertices.size()) - 1;
  std::vector<si::Point> v;
  for (const auto& x : vertices) {
    if (static_cast<int>(x.size()) != d) throw si::InvalidArgument("a d-simplex needs d+1 vertices in R^d");
    v.push_back(to_point(x));
  }
  return si::Simplex(d, v, allow_degenerate ? si::DegeneracyPolicy::allow : si::DegeneracyPolicy::reject);
}

si::ScalarField wrap(const std::function<double(std::vector<double>)>& f, int d) {
  return [f, d](const si::Point& x) {
    py::gil_scoped_acquire gil;
    return f(from_point(x, d));
  };
}

py::dict estimate_dict(const si::ConstantEstimate& e) {
  py::dict out;
  out["value"] = e.value;
  out["target"] = si::to_string(e.target);
  out["method"] = si::to_string(e.method);
  out["d"] = e.d;
  out["k"] = e.k;
  out["p"] = e.p;
  if (e.target == si::ConstantTarget::B) out["m"] = e.m;
  else out["delta"] = from_index(e.delta);
  out["r"] = e.r;
  out["theory_valid"] = e.theory_valid;
  std::vector<std::pair<int, double>> trace;
  for (const auto& t : e.trace) trace.emplace_back(t.r, t.value);
  out["trace"] = trace;
  if (e.target == si::ConstantTarget::A) out["constraint_residual"] = e.constraint_residual;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lagrange interpolation constants on simplices";

  py::register_exception<si::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<si::IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<si::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.attr("__version__") = si::version();

  py::class_<si::Simplex>(m, "Simplex")
      .def(py::init(&make_simplex), py::arg("vertices"), py::arg("allow_degenerate") = false)
      .def_property_readonly("dim", &si::Simplex::dim)
      .def_property_readonly("volume", &si::Simplex::volume)
      .def_property_readonly("diameter", &si::Simplex::diameter)
      .def_property_readonly("vertices",
                             [](const si::Simplex& K) {
                               std::vector<std::vector<double>> out;
                               for (const auto& v : K.vertices()) out.push_back(from_point(v, K.dim()));
                               return out;
                             })
      .def("from_reference",
           [](const si::Simplex& K, const std::vector<double>& x) {
             return from_point(K.from_reference(to_point(x)), K.dim());
           })
      .def("to_reference", [](const si::Simplex& K, const std::vector<double>& x) {
        return from_point(K.to_reference(to_point(x)), K.dim());
      });

  m.def("reference_simplex", &si::reference_simplex, py::arg("d"));
  m.def("squeeze", &si::squeeze, py::arg("d"), py::arg("alpha"), py::arg("beta") = 1.0,
        "K_alpha (d=2) or K_alphabeta (d=3).");

  py::class_<si::GeometryReport>(m, "GeometryReport")
      .def_readonly("h", &si::GeometryReport::h)
      .def_readonly("rho", &si::GeometryReport::rho)
      .def_readonly("R", &si::GeometryReport::R)
      .def_readonly("max_angle", &si::GeometryReport::max_angle)
      .def_readonly("max_face_angle", &si::GeometryReport::max_face_angle)
      .def_readonly("max_dihedral_angle", &si::GeometryReport::max_dihedral_angle)
      .def_readonly("theta_jamet", &si::GeometryReport::theta_jamet)
      .def_readonly("chunkiness", &si::GeometryReport::chunkiness)
      .def_readonly("semiregularity", &si::GeometryReport::semiregularity)
      .def_readonly("degenerate", &si::GeometryReport::degenerate);

  m.def("geometry_report", [](const si::Simplex& K) { return si::geometry_report(K); }, py::arg("K"));
  m.def("lattice_nodes", [](const si::Simplex& K, int k) {
    std::vector<std::pair<std::vector<int>, std::vector<double>>> out;
    for (const auto& n : si::lattice_nodes(K, k)) out.emplace_back(from_index(n.index), from_point(n.point, K.dim()));
    return out;
  });

  py::class_<si::Polynomial>(m, "Polynomial")
      .def(py::init<int, int, std::vector<double>>(), py::arg("dim"), py::arg("degree"), py::arg("coeffs"))
      .def_static("monomial",
                  [](const std::vector<int>& e, double c) { return si::Polynomial::monomial(to_index(e), c); },
                  py::arg("exponent"), py::arg("coeff") = 1.0)
      .def_static("constant", &si::Polynomial::constant)
      .def_static("exponents",
                  [](int d, int degree) {
                    std::vector<std::vector<int>> out;
                    for (const auto& e : si::monomial_exponents(d, degree)) out.push_back(from_index(e));
                    return out;
                  },
                  "Coefficient order for the given dimension and degree bound.")
      .def_property_readonly("dim", &si::Polynomial::dim)
      .def_property_readonly("degree", &si::Polynomial::effective_degree)
      .def_property_readonly("coeffs",
                             [](const si::Polynomial& p) {
                               const auto c = p.coeffs();
                               return std::vector<double>(c.begin(), c.end());
                             })
      .def("__call__", [](const si::Polynomial& p, const std::vector<double>& x) { return p(to_point(x)); })
      .def("derivative", [](const si::Polynomial& p, const std::vector<int>& d) { return p.derivative(to_index(d)); })
      .def("__add__", [](const si::Polynomial& a, const si::Polynomial& b) { return a + b; })
      .def("__sub__", [](const si::Polynomial& a, const si::Polynomial& b) { return a - b; })
      .def("__mul__", [](const si::Polynomial& a, double s) { return a * s; })
      .def("__rmul__", [](const si::Polynomial& a, double s) { return s * a; });

  py::class_<si::LagrangeBasis>(m, "LagrangeBasis")
      .def(py::init<const si::Simplex&, int>(), py::arg("K"), py::arg("k"))
      .def("__len__", &si::LagrangeBasis::size)
      .def("__getitem__",
           [](const si::LagrangeBasis& b, std::size_t i) {
             if (i >= b.size()) throw py::index_error();
             return b[i];
           })
      .def_property_readonly("route",
                             [](const si::LagrangeBasis& b) {
                               return b.route() == si::BasisRoute::pullback ? "pullback" : "vandermonde";
                             })
      .def("interpolate", py::overload_cast<const si::Polynomial&>(&si::LagrangeBasis::interpolate, py::const_))
      .def("interpolate", [](const si::LagrangeBasis& b, const std::function<double(std::vector<double>)>& f) {
        return b.interpolate(wrap(f, b.element().dim()));
      });

  m.def(
      "lp_norm",
      [](const si::Polynomial& v, const si::Simplex& K, double p) {
        const auto n = si::lp_norm_estimate(v, K, p);
        return std::make_pair(n.value, n.error_estimate);
      },
      py::arg("v"), py::arg("K"), py::arg("p"), "(value, error estimate)");
  m.def(
      "seminorm",
      [](const si::Polynomial& v, const si::Simplex& K, int order, double p) {
        const auto n = si::seminorm(v, K, {order, p, true});
        return std::make_pair(n.value, n.error_estimate);
      },
      py::arg("v"), py::arg("K"), py::arg("m"), py::arg("p"), "Weighted seminorm, (value, error estimate)");

  m.def(
      "diff_quotient",
      [](const si::Polynomial& f, int k, const std::vector<int>& gamma, const std::vector<int>& delta) {
        return si::diff_quotient(f.as_field(), k, to_index(gamma), to_index(delta));
      },
      py::arg("f"), py::arg("k"), py::arg("gamma"), py::arg("delta"));
  m.def(
      "box_integral",
      [](const si::Polynomial& v, int k, const std::vector<int>& gamma, const std::vector<int>& delta, int quad) {
        return si::box_integral(v.as_field(), si::make_box(k, to_index(gamma), to_index(delta)), quad);
      },
      py::arg("v"), py::arg("k"), py::arg("gamma"), py::arg("delta"), py::arg("quad_order"));
  m.def(
      "box_moment_sigma_min",
      [](int k, const std::vector<int>& delta, int quad) { return si::box_moment_matrix(k, to_index(delta), quad).sigma_min; },
      py::arg("k"), py::arg("delta"), py::arg("quad_order"));

  m.def(
      "estimate_B",
      [](const si::Simplex& K, int k, int order, int r) {
        py::gil_scoped_release nogil;
        const auto e = si::estimate_B_rayleigh(K, k, order, r);
        py::gil_scoped_acquire gil;
        return estimate_dict(e);
      },
      py::arg("K"), py::arg("k"), py::arg("m"), py::arg("r") = 3, "Rayleigh lower bound for B_2^{m,k}(K).");
  m.def(
      "estimate_A",
      [](const std::vector<int>& delta, int k, double p, int r, std::uint64_t seed) {
        py::gil_scoped_release nogil;
        const auto e = si::estimate_A(to_index(delta), k, p, r, 64, seed);
        py::gil_scoped_acquire gil;
        return estimate_dict(e);
      },
      py::arg("delta"), py::arg("k"), py::arg("p") = 2.0, py::arg("r") = 3, py::arg("seed") = 0);

  py::class_<si::StudyConfig>(m, "StudyConfig")
      .def(py::init([](const std::string& command) {
             si::StudyConfig c;
             c.command = si::parse_command(command);
             return c;
           }),
           py::arg("command") = "squeeze")
      .def_property(
          "command", [](const si::StudyConfig& c) { return si::to_string(c.command); },
          [](si::StudyConfig& c, const std::string& s) { c.command = si::parse_command(s); })
      .def_readwrite("d", &si::StudyConfig::d)
      .def_readwrite("k", &si::StudyConfig::k)
      .def_readwrite("m", &si::StudyConfig::m)
      .def_readwrite("p", &si::StudyConfig::p)
      .def_readwrite("alpha_min_exp", &si::StudyConfig::alpha_min_exp)
      .def_readwrite("beta", &si::StudyConfig::beta)
      .def_readwrite("r", &si::StudyConfig::r)
      .def_readwrite("probe_count", &si::StudyConfig::probe_count)
      .def_readwrite("quad_exactness", &si::StudyConfig::quad_exactness)
      .def_readwrite("seed", &si::StudyConfig::seed)
      .def_readwrite("method", &si::StudyConfig::method)
      .def_readwrite("target", &si::StudyConfig::target)
      .def_readwrite("semiregularity_threshold", &si::StudyConfig::semiregularity_threshold)
      .def_readwrite("allow_degenerate", &si::StudyConfig::allow_degenerate)
      .def_readwrite("mesh_path", &si::StudyConfig::mesh_path)
      .def_readwrite("threads", &si::StudyConfig::threads);

  m.def(
      "run_study",
      [](const si::StudyConfig& cfg) {
        std::vector<std::string> notes;
        std::string csv;
        {
          py::gil_scoped_release nogil;
          csv = si::run_study(cfg, &notes);
        }
        return std::make_pair(csv, notes);
      },
      py::arg("config"), "CSV text and notes on skipped elements; same bytes as the CLI.");
}
