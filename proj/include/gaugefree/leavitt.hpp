#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaugefree/graph.hpp"

namespace gaugefree {

using Rational = boost::multiprecision::cpp_rational;

// Graph over which the Leavitt path algebra is presented. Infinite bundles
// of the input multigraph are materialized as `bundle_size` representative
// parallel edges, and the Cuntz-Krieger summation relation is disabled at
// their source vertices (it only holds at finite emitters).
struct OracleGraph {
  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_names;
  std::vector<std::pair<int, int>> edges;  // (source, range)
  std::vector<bool> ck2_disabled;          // per vertex; true at infinite emitters
  std::vector<std::vector<int>> out_edges;
  std::vector<std::vector<int>> in_edges;
  std::vector<int> special_edge;  // per vertex; -1 unless the vertex is regular

  int vertex_count() const { return static_cast<int>(vertex_names.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int source(int e) const { return edges[static_cast<std::size_t>(e)].first; }
  int range(int e) const { return edges[static_cast<std::size_t>(e)].second; }
  bool is_regular(int v) const { return special_edge[static_cast<std::size_t>(v)] >= 0; }

  static OracleGraph materialize(const DirectedMultigraph& g, int bundle_size = 3);

  // Same graph with edges declared in the given order (a permutation of
  // 0..edge_count-1); changes the special-edge choice.
  OracleGraph with_edge_order(const std::vector<int>& order) const;
};

// Word s_mu s_nu^* with r(mu) = r(nu) = base. Empty mu and nu give the
// vertex projection p_base. Degree is |mu| - |nu|.
struct PathMonomial {
  std::vector<int> mu;
  std::vector<int> nu;
  int base = 0;

  int degree() const { return static_cast<int>(mu.size()) - static_cast<int>(nu.size()); }
  int length() const { return static_cast<int>(mu.size() + nu.size()); }
  auto operator<=>(const PathMonomial&) const = default;
};

PathMonomial vertex_projection(int v);
PathMonomial edge_isometry(const OracleGraph& g, int e);         // s_e
PathMonomial edge_coisometry(const OracleGraph& g, int e);       // s_e^*

// Exact-rational linear combination of normal-form monomials.
using LpaElement = std::map<PathMonomial, Rational>;

std::string monomial_str(const OracleGraph& g, const PathMonomial& m);

// True if no rewrite applies: mu and nu do not both end in the special
// edge of a regular vertex.
bool is_irreducible(const OracleGraph& g, const PathMonomial& m);

// Rewrites s_{mu c} s_{nu c}^* (c the special edge of its regular source v)
// into s_mu s_nu^* - sum over the other edges out of v. Linear, idempotent.
LpaElement normal_form(const OracleGraph& g, const PathMonomial& m);
LpaElement normal_form(const OracleGraph& g, const LpaElement& x);

// Contraction of s_mu s_nu^* . s_alpha s_beta^* before reduction: a single
// monomial when nu and alpha are prefix-compatible, nothing otherwise.
std::optional<PathMonomial> contract(const OracleGraph& g, const PathMonomial& a, const PathMonomial& b);

// Product reduced to normal form (possibly empty = zero).
LpaElement multiply_monomials(const OracleGraph& g, const PathMonomial& a, const PathMonomial& b);

LpaElement add(const LpaElement& x, const LpaElement& y);
LpaElement scale(const LpaElement& x, const Rational& c);
LpaElement multiply(const OracleGraph& g, const LpaElement& x, const LpaElement& y);

// 1 = sum of all vertex projections.
LpaElement unit_element(const OracleGraph& g);

constexpr int kFullGroup = 0;  // k = 0 encodes the full (integer) grading

// All irreducible monomials with |mu|+|nu| <= max_len whose degree equals
// `residue` (k = full) or is congruent to it mod k.
std::vector<PathMonomial> enumerate_component(const OracleGraph& g, int residue, int k, int max_len);

struct CertificateTerm {
  PathMonomial left;
  PathMonomial right;
  Rational coeff;
};

// Finite expression of the unit as sum of coeff * left * right with the
// left factors in one degree class and the right factors in the opposite.
struct Certificate {
  std::vector<CertificateTerm> terms;
  int found_at_len = 0;  // smallest factor-length bound at which it was found
};

bool verify_certificate(const OracleGraph& g, const Certificate& cert);

struct SearchLimits {
  // Abort the search once this many distinct product monomials have been
  // generated; 0 means unlimited.
  std::size_t max_products = 0;
};

class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact span-membership search for 1 in span{ x*y } with x ranging over the
// degree-(+1) class and y over the degree-(-1) class (direction +1), or the
// reverse order (direction -1), factor lengths bounded by max_len. Searches
// by ascending length bound, so a returned certificate uses the smallest
// sufficient bound. Sound always; not-found at finite max_len decides
// nothing.
std::optional<Certificate> unit_membership_witness(const OracleGraph& g, int k, int direction,
                                                   int max_len, const SearchLimits& limits = {});

struct OracleVerdict {
  bool certified = false;
  int undecided_at = 0;  // exhausted bound when not certified
  std::optional<Certificate> plus_certificate;
  std::optional<Certificate> minus_certificate;
};

// CERTIFIED-FREE when both one-sided unit memberships are witnessed.
OracleVerdict strong_grading_check(const OracleGraph& g, int k, int max_len,
                                   const SearchLimits& limits = {});

// Independent dimension count for finite acyclic graphs: sum over sinks of
// (number of paths into the sink, trivial included) squared. Rejects cycles
// and infinite bundles.
std::uint64_t lpa_dimension_acyclic(const DirectedMultigraph& g);

}  // namespace gaugefree
