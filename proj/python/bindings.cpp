#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpt/harness.hpp"
#include "dpt/io.hpp"
#include "dpt/montecarlo.hpp"
#include "dpt/surgery.hpp"

namespace py = pybind11;
using namespace dpt;

namespace {

std::vector<int> resolve_arc(const Generated& g, const py::object& a) {
  if (py::isinstance<py::str>(a)) {
    const auto name = a.cast<std::string>();
    const auto it = g.arcs.find(name);
    if (it == g.arcs.end()) throw py::value_error("unknown arc '" + name + "'");
    return arc(g.dom, it->second.first, it->second.second).members;
  }
  if (py::isinstance<py::tuple>(a) && py::len(a) == 2) {
    const auto t = a.cast<std::pair<int, int>>();
    return arc(g.dom, t.first, t.second).members;
  }
  return a.cast<std::vector<int>>();
}

int resolve_point(const Generated& g, const py::object& p) {
  if (py::isinstance<py::str>(p)) {
    const auto name = p.cast<std::string>();
    const auto it = g.points.find(name);
    if (it == g.points.end()) throw py::value_error("unknown point '" + name + "'");
    return it->second;
  }
  return p.cast<int>();
}

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_dpt, m) {
  m.doc() = "Discrete potential theory on planar graphs";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);

  py::class_<Generated>(m, "Domain")
      .def_property_readonly("num_interior", [](const Generated& g) { return g.dom.num_interior(); })
      .def_property_readonly("num_boundary", [](const Generated& g) { return g.dom.num_boundary(); })
      .def_property_readonly("num_vertices", [](const Generated& g) { return g.dom.g().num_vertices(); })
      .def_property_readonly("simply_connected", [](const Generated& g) { return g.dom.simply_connected; })
      .def_property_readonly("quad", [](const Generated& g) { return g.quad; })
      .def_property_readonly("arcs", [](const Generated& g) { return g.arcs; })
      .def_property_readonly("points", [](const Generated& g) { return g.points; })
      .def_property_readonly("interior", [](const Generated& g) { return g.dom.interior; })
      .def("arc", [](const Generated& g, int a, int b) { return arc(g.dom, a, b).members; }, py::arg("a"),
           py::arg("b"))
      .def("to_json", [](const Generated& g) { return to_py(domain_to_json(g)); })
      .def("__repr__", [](const Generated& g) {
        return "<Domain " + g.spec.family + " interior=" + std::to_string(g.dom.num_interior()) +
               " boundary=" + std::to_string(g.dom.num_boundary()) + ">";
      });

  m.def("generate",
        [](const std::string& family, const std::map<std::string, double>& params, std::uint64_t seed) {
          return generate(family, params, seed);
        },
        py::arg("family"), py::arg("params") = std::map<std::string, double>{}, py::arg("seed") = 0);
  m.def("load_domain", &load_domain_file, py::arg("path"));

  m.def("harmonic_measure",
        [](const Generated& g, const py::object& u, const py::object& E) {
          return harmonic_measure(g.dom, resolve_point(g, u), resolve_arc(g, E));
        },
        py::arg("domain"), py::arg("u"), py::arg("arc"));
  m.def("green",
        [](const Generated& g, const py::object& u, const py::object& v) {
          return partition_Z(g.dom, Endpoint::vertex(resolve_point(g, u)), Endpoint::vertex(resolve_point(g, v))).value;
        },
        py::arg("domain"), py::arg("u"), py::arg("v"));
  m.def("partition_function",
        [](const Generated& g, const py::object& A, const py::object& B) {
          return partition_Z_arcs(g.dom, resolve_arc(g, A), resolve_arc(g, B)).value;
        },
        py::arg("domain"), py::arg("A"), py::arg("B"));
  m.def("extremal_length",
        [](const Generated& g, const py::object& A, const py::object& B) {
          return extremal_length(g.dom, resolve_arc(g, A), resolve_arc(g, B)).EL;
        },
        py::arg("domain"), py::arg("A"), py::arg("B"));
  m.def("cross_ratios",
        [](const Generated& g, const std::optional<std::array<int, 4>>& marks) {
          const auto q = marks ? *marks : g.quad;
          const auto cr = cross_ratios(make_quad(g.dom, q[0], q[1], q[2], q[3]));
          return py::dict(py::arg("X") = cr.X, py::arg("Y") = cr.Y);
        },
        py::arg("domain"), py::arg("marks") = py::none());
  m.def("invariants",
        [](const Generated& g, const std::optional<std::array<int, 4>>& marks) {
          const auto q = marks ? *marks : g.quad;
          const auto r = invariant_report(make_quad(g.dom, q[0], q[1], q[2], q[3]));
          py::dict d;
          d["Z"] = r.Z;
          d["X"] = r.X;
          d["Y"] = r.Y;
          d["EL"] = r.EL;
          d["Z_dual"] = r.Z_dual;
          d["X_dual"] = r.X_dual;
          d["Y_dual"] = r.Y_dual;
          d["EL_dual"] = r.EL_dual;
          d["EL_dual_network"] = r.EL_dual_network;
          d["ratios"] = r.ratios;
          d["flags"] = r.flags;
          return d;
        },
        py::arg("domain"), py::arg("marks") = py::none());
  m.def("estimate_hm",
        [](const Generated& g, const py::object& u, const py::object& E, long n, std::uint64_t seed) {
          const auto e = estimate_hm(g.dom, resolve_point(g, u), resolve_arc(g, E), n, seed);
          return py::make_tuple(e.estimate, e.std_error);
        },
        py::arg("domain"), py::arg("u"), py::arg("arc"), py::arg("n"), py::arg("seed") = 1);
  m.def("verify",
        [](const py::object& spec) {
          const CorpusSpec s = spec.is_none()
                                   ? CorpusSpec::default_spec()
                                   : spec_from_json(nlohmann::json::parse(
                                         py::module_::import("json").attr("dumps")(spec).cast<std::string>()));
          RatioReport rep;
          {
            py::gil_scoped_release release;
            rep = run_corpus(s);
          }
          return to_py(report_body_json(rep));
        },
        py::arg("spec") = py::none(), "Run the bracket suite; spec is a dict or None for the built-in corpus.");
}
