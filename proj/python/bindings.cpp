#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "alexq/cli.hpp"
#include "alexq/diagram.hpp"
#include "alexq/error.hpp"
#include "alexq/presentation.hpp"
#include "alexq/quandle.hpp"
#include "alexq/specialize.hpp"

namespace py = pybind11;
using namespace alexq;

namespace {

std::vector<std::string> row_strings(const PolyRow& row) {
  std::vector<std::string> out;
  for (const auto& f : row) out.push_back(to_string(f));
  return out;
}

py::dict decomposition_dict(const CyclicDecomposition& c) {
  py::dict out;
  out["free_rank"] = c.free_rank;
  std::vector<std::string> factors;
  for (const auto& t : c.torsion) factors.push_back(to_string(t.factor));
  out["factors"] = factors;
  return out;
}

SpecializedModule specialized(const LinkDiagram& d, std::uint64_t prime, const std::vector<std::uint64_t>& assign) {
  const auto p = alexander_matrix(d);
  return SpecializedModule(p, make_specialization(prime, assign, p.num_vars));
}

}  // namespace

PYBIND11_MODULE(_alexq, m) {
  m.doc() = "Alexander modules and quandles of link diagrams";

  // Later registrations are tried first, so subclasses follow their bases.
  auto& error = py::register_exception<Error>(m, "Error");
  auto& usage = py::register_exception<UsageError>(m, "UsageError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", usage.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());

  py::class_<LinkDiagram>(m, "Diagram")
      .def_static("parse", [](const std::string& text) { return parse_diagram(text); }, py::arg("text"))
      .def_static("from_pd", [](const std::string& text) { return parse_pd_code(text); }, py::arg("text"))
      .def_static(
          "random",
          [](std::uint64_t seed, std::size_t components, std::size_t crossings) {
            return random_diagram(seed, {components, crossings});
          },
          py::arg("seed"), py::arg("components") = 1, py::arg("crossings") = 3)
      .def_property_readonly("arcs", &LinkDiagram::arcs)
      .def_property_readonly("crossings",
                             [](const LinkDiagram& d) {
                               std::vector<std::tuple<std::string, std::string, std::string>> out;
                               for (const auto& c : d.crossings()) {
                                 out.emplace_back(d.label(c.over), d.label(c.under_right), d.label(c.under_left));
                               }
                               return out;
                             })
      .def_property_readonly("num_components", &LinkDiagram::num_components)
      .def("component",
           [](const LinkDiagram& d, const std::string& label) {
             const auto a = d.find_arc(label);
             if (!a) throw UsageError("unknown arc '" + label + "'");
             return d.component(*a);
           })
      .def("to_native", [](const LinkDiagram& d) { return to_native(d); })
      .def("digest", &diagram_digest)
      .def("__eq__", [](const LinkDiagram& a, const LinkDiagram& b) { return a == b; })
      .def("__repr__", [](const LinkDiagram& d) {
        return "<Diagram arcs=" + std::to_string(d.num_arcs()) + " crossings=" + std::to_string(d.num_crossings()) +
               " components=" + std::to_string(d.num_components()) + ">";
      });

  m.def(
      "alexander_matrix",
      [](const LinkDiagram& d) {
        std::vector<std::vector<std::string>> out;
        for (const auto& r : alexander_matrix(d).relations) out.push_back(row_strings(r));
        return out;
      },
      py::arg("diagram"), "Relation rows over the Laurent ring, one per crossing.");

  m.def(
      "decompose",
      [](const LinkDiagram& d) -> py::object {
        const auto c = cyclic_decomposition(simplify(alexander_matrix(d)));
        if (!c) return py::none();
        return decomposition_dict(*c);
      },
      py::arg("diagram"), "Free rank and torsion factors, or None when no cyclic form is found.");

  m.def(
      "elementary_ideal",
      [](const LinkDiagram& d, std::size_t k) {
        return row_strings(elementary_ideal(simplify(alexander_matrix(d)), k));
      },
      py::arg("diagram"), py::arg("k"));

  m.def(
      "module_dimension",
      [](const LinkDiagram& d, std::uint64_t prime, const std::vector<std::uint64_t>& assign) {
        return specialized(d, prime, assign).dimension();
      },
      py::arg("diagram"), py::arg("prime"), py::arg("assign"));

  m.def(
      "coloring_exponent",
      [](const LinkDiagram& d, std::uint64_t prime, const std::vector<std::uint64_t>& assign) {
        return coloring_exponent(d, make_specialization(prime, assign, d.num_components()));
      },
      py::arg("diagram"), py::arg("prime"), py::arg("assign"));

  m.def(
      "quandle",
      [](const LinkDiagram& d, std::uint64_t prime, const std::vector<std::uint64_t>& assign) {
        const auto s = specialized(d, prime, assign);
        const auto q = generate_QA(s, true);
        std::vector<std::size_t> sizes;
        for (const auto& o : orbits(q)) sizes.push_back(o.size());
        py::dict out;
        out["size"] = q.size();
        out["orbit_sizes"] = sizes;
        out["module_dimension"] = s.dimension();
        if (q.has_tables()) {
          out["presentation_dimension"] = quandle_presentation(q).dimension;
        } else {
          out["presentation_dimension"] = py::none();
        }
        return out;
      },
      py::arg("diagram"), py::arg("prime"), py::arg("assign"),
      "Quandle generated by the arcs in a prime-field specialization.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs an alexq subcommand; returns (exit_code, stdout, stderr).");
}
