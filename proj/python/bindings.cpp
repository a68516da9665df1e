#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gaugefree/report.hpp"

namespace py = pybind11;
using namespace gaugefree;

namespace {

InputDocument parse_or_raise(const std::string& text) {
  try {
    return parse_input(text);
  } catch (const ParseError& e) {
    throw py::value_error(e.what());
  }
}

std::vector<GroupSpec> groups_or_raise(const std::string& csv) {
  try {
    return parse_groups(csv);
  } catch (const ParseError& e) {
    throw py::value_error(e.what());
  }
}

std::string analyze_py(const std::string& text, const std::string& groups, const std::string& format) {
  FreenessReport r = analyze(parse_or_raise(text), groups_or_raise(groups));
  return format == "text" ? report_to_text(r) : report_to_json(r);
}

std::string verify_py(const std::string& text, const std::string& groups, int max_len,
                      int bundle_size, std::size_t max_products, const std::string& format) {
  FreenessReport r =
      verify(parse_or_raise(text), groups_or_raise(groups), max_len, bundle_size, max_products);
  return format == "text" ? report_to_text(r) : report_to_json(r);
}

bool is_free_py(const std::string& text, const std::string& group) {
  auto gs = groups_or_raise(group);
  if (gs.size() != 1) throw py::value_error("pass exactly one group, e.g. 'full' or '2'");
  InputDocument doc = parse_or_raise(text);
  const auto& c = doc.corr();
  return (gs[0].k == 0 ? full_gauge_free(c) : zk_gauge_free(c, gs[0].k)).free;
}

std::vector<std::vector<std::string>> ideal_chain_py(const std::string& text) {
  InputDocument doc = parse_or_raise(text);
  const auto& c = doc.corr();
  std::vector<std::vector<std::string>> out;
  for (const auto& ideal : ideal_chain(c).ideals) {
    std::vector<std::string> names;
    for (int v : ideal.support.members()) names.push_back(c.point_name(v));
    out.push_back(std::move(names));
  }
  return out;
}

std::uint64_t dimension_py(const std::string& text) {
  InputDocument doc = parse_or_raise(text);
  try {
    return lpa_dimension_acyclic(graph_for_oracle(doc));
  } catch (const std::invalid_argument& e) {
    throw py::value_error(e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_gaugefree, m) {
  m.doc() = "Freeness of gauge actions on graph and Cuntz-Pimsner algebras";

  py::register_exception<ResourceCapExceeded>(m, "ResourceCapExceeded");

  m.def("analyze", &analyze_py, py::arg("input"), py::arg("groups") = "full,2,3",
        py::arg("format") = "json",
        "Decide freeness of the gauge action for each requested group.\n"
        "`input` is a JSON document in graph form ({vertices, edges, infinite})\n"
        "or matrix form ({points, dims}); returns the report as JSON or text.");

  m.def("verify", &verify_py, py::arg("input"), py::arg("groups") = "full,2,3",
        py::arg("max_len") = 6, py::arg("bundle_size") = 3, py::arg("max_products") = 0,
        py::arg("format") = "json",
        "analyze() plus an independent symbolic certificate search in the\n"
        "Leavitt path algebra; certificates and oracle status are in the report.");

  m.def("is_free", &is_free_py, py::arg("input"), py::arg("group"),
        "Boolean freeness verdict for a single group ('full' or an integer k >= 2).");

  m.def("ideal_chain", &ideal_chain_py, py::arg("input"),
        "Supports of the descending ideal chain I_0, I_1, ... up to stabilization.");

  m.def("lpa_dimension_acyclic", &dimension_py, py::arg("input"),
        "Dimension of the Leavitt path algebra of a finite acyclic graph.");
}
