#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gaugefree/correspondence.hpp"
#include "gaugefree/graph.hpp"
#include "gaugefree/leavitt.hpp"

namespace gaugefree {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested gauge group: k = 0 for the full circle action, k >= 2 for Z/k.
struct GroupSpec {
  int k = 0;
};

// Parses "full,2,3"; throws ParseError on malformed entries or k < 2.
std::vector<GroupSpec> parse_groups(const std::string& csv);
std::string group_name(const GroupSpec& g);

// Validated input: either a graph document or a dimension-matrix document.
// The correspondence view is always available (from_graph for graph form).
struct InputDocument {
  enum class Kind { Graph, Matrix };
  Kind kind;
  std::optional<DirectedMultigraph> graph;
  std::optional<CommutativeCorrespondence> correspondence;

  const CommutativeCorrespondence& corr() const { return *correspondence; }
};

// Parses and validates a UTF-8 JSON document in either shape; throws
// ParseError naming the first violation.
InputDocument parse_input(const std::string& text);

// Graph used for oracle runs: the graph itself for graph form, a graph with
// dim-many parallel edges (bundles for infinite entries) for matrix form.
DirectedMultigraph graph_for_oracle(const InputDocument& doc);

enum class OracleStatus { Skipped, Certified, Undecided, ResourceCap };

struct CertificateEcho {
  std::string coeff;
  std::string left;
  std::string right;
};

struct GroupReport {
  GroupSpec group;
  Verdict verdict;
  OracleStatus oracle_status = OracleStatus::Skipped;
  int undecided_at = 0;
  std::vector<CertificateEcho> plus_certificate;   // empty unless certified
  std::vector<CertificateEcho> minus_certificate;
};

struct FreenessReport {
  std::string canonical_input;  // canonicalized echo of the parsed document
  std::vector<std::string> points;

  // Condition breakdown shared by all groups.
  bool faithful = false;
  bool finitely_generated = false;
  bool artinian = false;
  std::vector<std::string> katsura_support;
  std::vector<std::vector<std::string>> chain;  // supp(I_0), supp(I_1), ...
  int stabilization_index = 0;

  std::vector<GroupReport> groups;

  bool verify_mode = false;
  int max_len = 0;
  int bundle_size = 0;
  bool disagreement = false;   // analyzer free but oracle undecided, any group
  bool resource_capped = false;
};

// Analyzer verdicts per group; graph-form inputs are additionally checked
// against the graph-level restatements (internal consistency assertion).
FreenessReport analyze(const InputDocument& doc, const std::vector<GroupSpec>& groups);

// analyze + Leavitt-oracle cross-check per group.
FreenessReport verify(const InputDocument& doc, const std::vector<GroupSpec>& groups, int max_len,
                      int bundle_size = 3, std::size_t max_products = 0);

// Byte-deterministic for fixed input and flags.
std::string report_to_json(const FreenessReport& r);
std::string report_to_text(const FreenessReport& r);

}  // namespace gaugefree
