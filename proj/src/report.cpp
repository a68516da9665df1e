#include "gaugefree/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace gaugefree {

using json = nlohmann::json;

std::vector<GroupSpec> parse_groups(const std::string& csv) {
  std::vector<GroupSpec> out;
  if (csv.empty() || csv.back() == ',') throw ParseError("empty group entry in '" + csv + "'");
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ParseError("empty group entry in '" + csv + "'");
    if (item == "full") {
      out.push_back(GroupSpec{kFullGroup});
      continue;
    }
    int k = 0;
    try {
      std::size_t pos = 0;
      k = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("group entry '" + item + "' is neither 'full' nor an integer");
    }
    if (k < 2) throw ParseError("finite gauge group requires k >= 2, got " + item);
    out.push_back(GroupSpec{k});
  }
  if (out.empty()) throw ParseError("no groups requested");
  return out;
}

std::string group_name(const GroupSpec& g) {
  return g.k == kFullGroup ? "full" : "Z/" + std::to_string(g.k);
}

namespace {

const json& require_field(const json& j, const char* field, const char* ctx) {
  auto it = j.find(field);
  if (it == j.end()) throw ParseError(std::string(ctx) + ": missing field '" + field + "'");
  return *it;
}

std::string require_string(const json& j, const char* field, const char* ctx) {
  const json& v = require_field(j, field, ctx);
  if (!v.is_string()) throw ParseError(std::string(ctx) + ": field '" + field + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");

  InputDocument doc{InputDocument::Kind::Graph, std::nullopt, std::nullopt};
  if (j.contains("vertices")) {
    doc.kind = InputDocument::Kind::Graph;
    const json& jv = j["vertices"];
    if (!jv.is_array() || jv.empty()) throw ParseError("'vertices' must be a non-empty array");
    std::vector<std::string> vertices;
    for (const auto& v : jv) {
      if (!v.is_string()) throw ParseError("'vertices' entries must be strings");
      vertices.push_back(v.get<std::string>());
    }
    std::vector<std::array<std::string, 3>> edges;
    if (j.contains("edges")) {
      if (!j["edges"].is_array()) throw ParseError("'edges' must be an array");
      for (const auto& e : j["edges"]) {
        if (!e.is_object()) throw ParseError("'edges' entries must be objects");
        edges.push_back({require_string(e, "id", "edge"), require_string(e, "src", "edge"),
                         require_string(e, "dst", "edge")});
      }
    }
    std::vector<std::pair<std::string, std::string>> bundles;
    if (j.contains("infinite")) {
      if (!j["infinite"].is_array()) throw ParseError("'infinite' must be an array");
      for (const auto& b : j["infinite"]) {
        if (!b.is_object()) throw ParseError("'infinite' entries must be objects");
        bundles.emplace_back(require_string(b, "src", "infinite bundle"),
                             require_string(b, "dst", "infinite bundle"));
      }
    }
    for (const auto& key : j.items())
      if (key.key() != "vertices" && key.key() != "edges" && key.key() != "infinite")
        throw ParseError("unknown field '" + key.key() + "' in graph document");
    try {
      doc.graph.emplace(std::move(vertices), std::move(edges), std::move(bundles));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    doc.correspondence.emplace(from_graph(*doc.graph));
    return doc;
  }
  if (j.contains("points")) {
    doc.kind = InputDocument::Kind::Matrix;
    const json& jp = j["points"];
    if (!jp.is_array() || jp.empty()) throw ParseError("'points' must be a non-empty array");
    std::vector<std::string> points;
    for (const auto& p : jp) {
      if (!p.is_string()) throw ParseError("'points' entries must be strings");
      points.push_back(p.get<std::string>());
    }
    const json& jd = require_field(j, "dims", "matrix document");
    if (!jd.is_array() || jd.size() != points.size())
      throw ParseError("'dims' must be a square matrix matching 'points'");
    std::vector<std::vector<ExtendedNat>> dims;
    for (const auto& row : jd) {
      if (!row.is_array() || row.size() != points.size())
        throw ParseError("'dims' must be a square matrix matching 'points'");
      std::vector<ExtendedNat> r;
      for (const auto& cell : row) {
        if (cell.is_string()) {
          if (cell.get<std::string>() != "inf")
            throw ParseError("matrix entries must be nonnegative integers or \"inf\"");
          r.push_back(ExtendedNat::infinity());
        } else if (cell.is_number_integer() && !cell.is_number_float()) {
          long long n = cell.get<long long>();
          if (n < 0) throw ParseError("negative matrix entry " + std::to_string(n));
          r.push_back(ExtendedNat(static_cast<std::uint64_t>(n)));
        } else {
          throw ParseError("matrix entries must be nonnegative integers or \"inf\"");
        }
      }
      dims.push_back(std::move(r));
    }
    for (const auto& key : j.items())
      if (key.key() != "points" && key.key() != "dims")
        throw ParseError("unknown field '" + key.key() + "' in matrix document");
    try {
      doc.correspondence.emplace(std::move(points), std::move(dims));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return doc;
  }
  throw ParseError("document must contain 'vertices' (graph form) or 'points' (matrix form)");
}

DirectedMultigraph graph_for_oracle(const InputDocument& doc) {
  if (doc.graph) return *doc.graph;
  const auto& c = doc.corr();
  std::vector<std::array<std::string, 3>> edges;
  std::vector<std::pair<std::string, std::string>> bundles;
  for (int u = 0; u < c.point_count(); ++u)
    for (int v = 0; v < c.point_count(); ++v) {
      ExtendedNat d = c.dim(u, v);
      if (d.is_infinite()) {
        bundles.emplace_back(c.point_name(u), c.point_name(v));
      } else {
        for (std::uint64_t i = 0; i < d.finite_value(); ++i)
          edges.push_back({c.point_name(u) + "->" + c.point_name(v) + "#" + std::to_string(i),
                           c.point_name(u), c.point_name(v)});
      }
    }
  return DirectedMultigraph(c.point_names(), std::move(edges), std::move(bundles));
}

namespace {

std::string canonical_echo(const InputDocument& doc) {
  json j;
  if (doc.kind == InputDocument::Kind::Graph) {
    const auto& g = *doc.graph;
    j["vertices"] = g.vertex_names();
    json edges = json::array();
    for (const auto& e : g.edges())
      edges.push_back({{"id", e.id}, {"src", g.vertex_name(e.src)}, {"dst", g.vertex_name(e.dst)}});
    j["edges"] = edges;
    json bundles = json::array();
    for (const auto& b : g.infinite_bundles())
      bundles.push_back({{"src", g.vertex_name(b.first)}, {"dst", g.vertex_name(b.second)}});
    j["infinite"] = bundles;
  } else {
    const auto& c = doc.corr();
    j["points"] = c.point_names();
    json dims = json::array();
    for (int u = 0; u < c.point_count(); ++u) {
      json row = json::array();
      for (int v = 0; v < c.point_count(); ++v) {
        ExtendedNat d = c.dim(u, v);
        if (d.is_infinite())
          row.push_back("inf");
        else
          row.push_back(d.finite_value());
      }
      dims.push_back(row);
    }
    j["dims"] = dims;
  }
  return j.dump();
}

std::vector<std::string> names_of(const CommutativeCorrespondence& c, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(c.point_name(i));
  return out;
}

// Graph-level restatements of the theorems; must agree with the
// correspondence-level verdicts on graph-form inputs.
void cross_check_graph(const DirectedMultigraph& g, const GroupSpec& group, bool corr_free) {
  bool graph_free;
  if (group.k == kFullGroup) {
    graph_free = sinks(g).empty() && is_row_finite(g);
  } else {
    VertexSet targets = sinks(g).unite(infinite_emitters(g));
    graph_free = targets.subset_of(receivers_at_least(g, group.k - 1));
  }
  if (graph_free != corr_free)
    throw std::logic_error("internal: graph-level and correspondence-level verdicts disagree for " +
                           group_name(group));
}

std::vector<CertificateEcho> echo_certificate(const OracleGraph& og, const Certificate& cert) {
  std::vector<CertificateEcho> out;
  for (const auto& t : cert.terms) {
    std::ostringstream coeff;
    coeff << t.coeff;
    out.push_back(CertificateEcho{coeff.str(), monomial_str(og, t.left), monomial_str(og, t.right)});
  }
  return out;
}

FreenessReport analyze_impl(const InputDocument& doc, const std::vector<GroupSpec>& groups) {
  const auto& c = doc.corr();
  FreenessReport r;
  r.canonical_input = canonical_echo(doc);
  r.points = c.point_names();

  r.faithful = is_faithful(c);
  r.finitely_generated = is_fg(c);
  IdealChain chain = ideal_chain(c);
  r.artinian = chain.is_artinian;
  r.stabilization_index = chain.stabilization_index;
  for (const auto& ideal : chain.ideals) r.chain.push_back(names_of(c, ideal.support.members()));
  r.katsura_support = names_of(c, katsura_ideal(c).support.members());

  for (const auto& g : groups) {
    GroupReport gr;
    gr.group = g;
    gr.verdict = g.k == kFullGroup ? full_gauge_free(c) : zk_gauge_free(c, g.k);
    if (doc.kind == InputDocument::Kind::Graph) cross_check_graph(*doc.graph, g, gr.verdict.free);
    r.groups.push_back(std::move(gr));
  }
  return r;
}

}  // namespace

FreenessReport analyze(const InputDocument& doc, const std::vector<GroupSpec>& groups) {
  return analyze_impl(doc, groups);
}

FreenessReport verify(const InputDocument& doc, const std::vector<GroupSpec>& groups, int max_len,
                      int bundle_size, std::size_t max_products) {
  FreenessReport r = analyze_impl(doc, groups);
  r.verify_mode = true;
  r.max_len = max_len;
  r.bundle_size = bundle_size;

  OracleGraph og = OracleGraph::materialize(graph_for_oracle(doc), bundle_size);
  SearchLimits limits{max_products};
  for (auto& gr : r.groups) {
    try {
      OracleVerdict ov = strong_grading_check(og, gr.group.k, max_len, limits);
      if (ov.certified) {
        gr.oracle_status = OracleStatus::Certified;
        gr.plus_certificate = echo_certificate(og, *ov.plus_certificate);
        gr.minus_certificate = echo_certificate(og, *ov.minus_certificate);
      } else {
        gr.oracle_status = OracleStatus::Undecided;
        gr.undecided_at = ov.undecided_at;
        if (gr.verdict.free) r.disagreement = true;
      }
    } catch (const ResourceCapExceeded&) {
      gr.oracle_status = OracleStatus::ResourceCap;
      r.resource_capped = true;
    }
  }
  return r;
}

namespace {

json witness_json(const CommutativeCorrespondence& c, const Verdict& v) {
  json w;
  if (v.k == kFullGroup) {
    if (v.free) {
      w["satisfied"] = {"faithful", "finitely_generated", "artinian"};
      w["stabilization_index"] = v.stabilization_index;
    } else if (!v.faithful) {
      w["failing"] = "faithfulness";
      w["points"] = names_of(c, v.zero_rows);
    } else if (!v.finitely_generated) {
      w["failing"] = "finite_generation";
      w["points"] = names_of(c, v.infinite_rows);
    } else {
      w["failing"] = "artinian";
    }
  } else {
    if (v.free) {
      json paths = json::array();
      for (const auto& p : v.covering_paths)
        paths.push_back({{"target", c.point_name(p.target)}, {"path", names_of(c, p.points)}});
      w["covering_paths"] = paths;
    } else {
      w["failing"] = "unit_not_covered";
      w["points"] = names_of(c, v.uncovered);
    }
  }
  return w;
}

std::string oracle_status_str(OracleStatus s, int undecided_at) {
  switch (s) {
    case OracleStatus::Skipped:
      return "skipped";
    case OracleStatus::Certified:
      return "certified";
    case OracleStatus::ResourceCap:
      return "resource_cap";
    case OracleStatus::Undecided:
      return "undecided_at(" + std::to_string(undecided_at) + ")";
  }
  return "unknown";
}

json certificate_json(const std::vector<CertificateEcho>& cert) {
  json out = json::array();
  for (const auto& t : cert) out.push_back({{"coeff", t.coeff}, {"left", t.left}, {"right", t.right}});
  return out;
}

}  // namespace

std::string report_to_json(const FreenessReport& r) {
  json j;
  j["input"] = json::parse(r.canonical_input);
  j["points"] = r.points;
  j["conditions"] = {{"faithful", r.faithful},
                     {"finitely_generated", r.finitely_generated},
                     {"artinian", r.artinian},
                     {"katsura_support", r.katsura_support},
                     {"stabilization_index", r.stabilization_index}};
  j["chain"] = r.chain;

  // Witness rendering needs the point names; recover them from the echo.
  InputDocument doc = parse_input(r.canonical_input);
  const auto& c = doc.corr();

  json groups = json::array();
  for (const auto& gr : r.groups) {
    json g;
    g["group"] = group_name(gr.group);
    g["free"] = gr.verdict.free;
    g["witness"] = witness_json(c, gr.verdict);
    g["oracle"] = oracle_status_str(gr.oracle_status, gr.undecided_at);
    if (gr.oracle_status == OracleStatus::Certified) {
      g["certificate_plus"] = certificate_json(gr.plus_certificate);
      g["certificate_minus"] = certificate_json(gr.minus_certificate);
    }
    groups.push_back(g);
  }
  j["groups"] = groups;
  if (r.verify_mode) {
    j["verify"] = {{"max_len", r.max_len},
                   {"bundle_size", r.bundle_size},
                   {"disagreement", r.disagreement},
                   {"resource_capped", r.resource_capped}};
  }
  return j.dump(2) + "\n";
}

std::string report_to_text(const FreenessReport& r) {
  InputDocument doc = parse_input(r.canonical_input);
  const auto& c = doc.corr();
  std::ostringstream out;
  out << "points:";
  for (const auto& p : r.points) out << " " << p;
  out << "\n";
  out << "conditions: faithful=" << (r.faithful ? "yes" : "no")
      << " finitely_generated=" << (r.finitely_generated ? "yes" : "no")
      << " artinian=" << (r.artinian ? "yes" : "no") << "\n";
  out << "katsura ideal support: {";
  for (std::size_t i = 0; i < r.katsura_support.size(); ++i)
    out << (i ? ", " : "") << r.katsura_support[i];
  out << "}\n";
  out << "ideal chain (stabilizes at " << r.stabilization_index << "):\n";
  for (std::size_t n = 0; n < r.chain.size(); ++n) {
    out << "  I_" << n << " = {";
    for (std::size_t i = 0; i < r.chain[n].size(); ++i) out << (i ? ", " : "") << r.chain[n][i];
    out << "}\n";
  }
  for (const auto& gr : r.groups) {
    out << "group " << group_name(gr.group) << ": " << (gr.verdict.free ? "free" : "not free");
    const Verdict& v = gr.verdict;
    if (v.k == kFullGroup) {
      if (!v.free) {
        if (!v.faithful) {
          out << " (faithfulness fails at";
          for (int p : v.zero_rows) out << " " << c.point_name(p);
          out << ")";
        } else if (!v.finitely_generated) {
          out << " (finite generation fails at";
          for (int p : v.infinite_rows) out << " " << c.point_name(p);
          out << ")";
        } else {
          out << " (chain does not stabilize)";
        }
      }
    } else if (!v.free) {
      out << " (uncovered:";
      for (int p : v.uncovered) out << " " << c.point_name(p);
      out << ")";
    } else if (!v.covering_paths.empty()) {
      out << " (covering paths:";
      for (const auto& p : v.covering_paths) {
        out << " [";
        for (std::size_t i = 0; i < p.points.size(); ++i)
          out << (i ? "->" : "") << c.point_name(p.points[i]);
        out << "]";
      }
      out << ")";
    }
    if (gr.oracle_status != OracleStatus::Skipped)
      out << " | oracle: " << oracle_status_str(gr.oracle_status, gr.undecided_at);
    out << "\n";
    if (gr.oracle_status == OracleStatus::Certified) {
      out << "  certificate(+):";
      for (const auto& t : gr.plus_certificate)
        out << " " << (t.coeff[0] == '-' ? "" : "+") << t.coeff << "*" << t.left << "*" << t.right;
      out << "\n  certificate(-):";
      for (const auto& t : gr.minus_certificate)
        out << " " << (t.coeff[0] == '-' ? "" : "+") << t.coeff << "*" << t.left << "*" << t.right;
      out << "\n";
    }
  }
  if (r.verify_mode) {
    out << "verify: max_len=" << r.max_len << " bundle_size=" << r.bundle_size
        << (r.resource_capped ? " RESOURCE-CAP" : (r.disagreement ? " DISAGREEMENT" : " agreement"))
        << "\n";
  }
  return out.str();
}

}  // namespace gaugefree
