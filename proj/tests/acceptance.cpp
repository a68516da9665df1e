// Acceptance suite: one pass/fail line per criterion, exit 0 only when all
// pass. Every computed value is checked against an independent route
// (graph-level restatements, brute-force path enumeration, the symbolic
// algebra oracle) with exact arithmetic and zero tolerance.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "corpus.hpp"
#include "gaugefree/correspondence.hpp"
#include "gaugefree/graph.hpp"
#include "gaugefree/leavitt.hpp"

using namespace gaugefree;

namespace {

int g_failures = 0;

void expect(bool ok, const char* what) {
  if (!ok) {
    ++g_failures;
    std::printf("    FAILED: %s\n", what);
  }
}

bool report_criterion(int number, const char* title, bool (*run)()) {
  g_failures = 0;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = run() && g_failures == 0;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %d [%s] %s (%.1fs)\n", number, ok ? "PASS" : "FAIL", title, secs);
  return ok;
}

// Graph-level restatements of the freeness theorems, the independent side
// of criterion 1.
bool full_free_graph(const DirectedMultigraph& g) {
  return sinks(g).empty() && is_row_finite(g);
}

bool zk_free_graph(const DirectedMultigraph& g, int k) {
  return sinks(g).unite(infinite_emitters(g)).subset_of(receivers_at_least(g, k - 1));
}

const std::vector<int> kGroups = {kFullGroup, 2, 3, 4};

bool analyzer_free(const CommutativeCorrespondence& c, int k) {
  return (k == kFullGroup ? full_gauge_free(c) : zk_gauge_free(c, k)).free;
}

// Certificates collected while running criteria 2, 4 and 6; criterion 5
// re-verifies all of them.
std::vector<std::pair<OracleGraph, Certificate>> g_certificates;

void collect(const OracleGraph& g, const OracleVerdict& v) {
  if (v.plus_certificate) g_certificates.emplace_back(g, *v.plus_certificate);
  if (v.minus_certificate) g_certificates.emplace_back(g, *v.minus_certificate);
}

bool criterion1() {
  for (const auto& cg : testutil::corpus(3, 3)) {
    DirectedMultigraph g = testutil::build(cg);
    CommutativeCorrespondence c = from_graph(g);
    expect(full_gauge_free(c).free == full_free_graph(g), "full verdict vs graph restatement");
    for (int k : {2, 3, 4})
      expect(zk_gauge_free(c, k).free == zk_free_graph(g, k), "Z/k verdict vs graph restatement");
  }
  return true;
}

// Factor-length bound at which every analyzer-free corpus case must be
// certified. For the full action a bound of 4 is provably too small: in
// v0 -> v2 -> v1 with a loop at v1, nothing of length >= 2 enters v0, so the
// minus-direction witness for p_v0 needs factors of length 5 (s[ac]s[bbb]*
// times s[bbb]s[ac]*). Bound 5 suffices corpus-wide.
int free_bound(int k) { return (k == kFullGroup) ? 5 : 2 * k + 2; }

bool criterion2() {
  for (const auto& cg : testutil::corpus(3, 3)) {
    DirectedMultigraph g = testutil::build(cg);
    CommutativeCorrespondence c = from_graph(g);
    OracleGraph og = OracleGraph::materialize(g);
    for (int k : kGroups) {
      if (analyzer_free(c, k)) {
        int bound = free_bound(k);
        OracleVerdict v = strong_grading_check(og, k, bound);
        expect(v.certified, "analyzer-free case not certified within the bound");
        collect(og, v);
      } else {
        OracleVerdict v = strong_grading_check(og, k, 6);
        expect(!v.certified, "analyzer-not-free case certified by the oracle");
      }
    }
  }
  return true;
}

bool criterion3() {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    DirectedMultigraph g = testutil::build(testutil::random_graph(rng, 8, 16, true));
    CommutativeCorrespondence c = from_graph(g);
    IdealChain chain = ideal_chain(c);
    expect(chain.stabilization_index <= g.vertex_count(), "stabilization index > vertex count");
    for (std::size_t n = 0; n < chain.ideals.size(); ++n)
      for (int v = 0; v < g.vertex_count(); ++v)
        expect(chain.ideals[n].support.contains(v) ==
                   testutil::receives_exact_brute(g, v, static_cast<int>(n)),
               "supp(I_n) disagrees with brute-force path enumeration");
  }
  return true;
}

bool criterion4() {
  // one loop: free for every group
  DirectedMultigraph loop({"v"}, {{{"e", "v", "v"}}});
  CommutativeCorrespondence cl = from_graph(loop);
  OracleGraph ol = OracleGraph::materialize(loop);
  for (int k : kGroups) {
    expect(analyzer_free(cl, k), "single loop should be free");
    OracleVerdict v = strong_grading_check(ol, k, free_bound(k));
    expect(v.certified, "single loop not certified");
    collect(ol, v);
  }

  // n >= 2 loops at one vertex: free for every group
  for (int n : {2, 3}) {
    std::vector<std::array<std::string, 3>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({"e" + std::to_string(i), "v", "v"});
    DirectedMultigraph g({"v"}, edges);
    CommutativeCorrespondence c = from_graph(g);
    OracleGraph og = OracleGraph::materialize(g);
    for (int k : kGroups) {
      expect(analyzer_free(c, k), "n loops should be free");
      OracleVerdict v = strong_grading_check(og, k, free_bound(k));
      expect(v.certified, "n loops not certified");
      collect(og, v);
    }
  }

  // u -> v: free exactly for Z/2 among {full, Z/2, Z/3}
  DirectedMultigraph arrow({"u", "v"}, {{{"e", "u", "v"}}});
  CommutativeCorrespondence ca = from_graph(arrow);
  OracleGraph oa = OracleGraph::materialize(arrow);
  expect(!full_gauge_free(ca).free, "arrow should not be free for the full action");
  expect(zk_gauge_free(ca, 2).free, "arrow should be free for Z/2");
  expect(!zk_gauge_free(ca, 3).free, "arrow should not be free for Z/3");
  OracleVerdict az2 = strong_grading_check(oa, 2, 6);
  expect(az2.certified, "arrow at Z/2 not certified");
  collect(oa, az2);
  expect(!strong_grading_check(oa, kFullGroup, 6).certified, "arrow certified for full action");
  expect(!strong_grading_check(oa, 3, 6).certified, "arrow certified for Z/3");

  // one vertex with an infinite bundle: not free for full, free for k >= 2
  DirectedMultigraph inf({"v"}, {}, {{"v", "v"}});
  CommutativeCorrespondence ci = from_graph(inf);
  OracleGraph oi = OracleGraph::materialize(inf);
  expect(!full_gauge_free(ci).free, "infinite bundle should not be free for the full action");
  expect(!strong_grading_check(oi, kFullGroup, 6).certified, "infinite bundle certified for full");
  for (int k : {2, 3, 4, 5}) {
    expect(zk_gauge_free(ci, k).free, "infinite bundle should be free for Z/k");
    OracleVerdict v = strong_grading_check(oi, k, 2 * k + 2);
    expect(v.certified, "infinite bundle not certified for Z/k");
    collect(oi, v);
  }
  return true;
}

bool check_acyclic_dimension(const DirectedMultigraph& g) {
  OracleGraph og = OracleGraph::materialize(g);
  std::uint64_t count = 0;
  int bound = 2 * g.vertex_count();
  for (int d = -bound; d <= bound; ++d)
    count += enumerate_component(og, d, kFullGroup, bound).size();
  return count == lpa_dimension_acyclic(g);
}

bool criterion5() {
  // dimension check on the acyclic members of the corpus ...
  int acyclic_seen = 0;
  for (const auto& cg : testutil::corpus(3, 3)) {
    if (cg.bundle) continue;
    DirectedMultigraph g = testutil::build(cg);
    if (!receivers_at_least(g, g.vertex_count()).empty()) continue;  // has a cycle
    ++acyclic_seen;
    expect(check_acyclic_dimension(g), "irreducible-monomial count != closed-form dimension");
  }
  expect(acyclic_seen >= 17, "too few acyclic graphs in the corpus");

  // ... and on random acyclic graphs up to 5 vertices
  std::mt19937 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    testutil::CorpusGraph cg = testutil::random_graph(rng, 5, 8, false);
    for (int u = 0; u < cg.n; ++u)  // keep edges strictly upward: acyclic
      for (int v = 0; v <= u; ++v) cg.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 0;
    expect(check_acyclic_dimension(testutil::build(cg)),
           "irreducible-monomial count != closed-form dimension (random)");
  }

  // 100% of certificates emitted by the other criteria re-verify
  expect(!g_certificates.empty(), "no certificates were collected");
  for (const auto& [g, cert] : g_certificates)
    expect(verify_certificate(g, cert), "emitted certificate failed re-verification");
  std::printf("    re-verified %zu certificates\n", g_certificates.size());
  return true;
}

bool criterion6() {
  for (const auto& cg : testutil::corpus(3, 3)) {
    DirectedMultigraph g = testutil::build(cg);
    CommutativeCorrespondence c = from_graph(g);

    // positive-finite multiplicity changes: duplicate every finite edge
    testutil::CorpusGraph scaled = cg;
    for (auto& row : scaled.adj)
      for (int& m : row) m *= 2;
    CommutativeCorrespondence cs = from_graph(testutil::build(scaled));
    for (int k : kGroups)
      expect(analyzer_free(c, k) == analyzer_free(cs, k),
             "verdict changed under multiplicity scaling");

    // edge-declaration permutations move the special-edge choice; certified
    // status must not depend on it
    OracleGraph og = OracleGraph::materialize(g);
    if (og.edge_count() < 2) continue;
    std::vector<int> reversed(static_cast<std::size_t>(og.edge_count()));
    for (int i = 0; i < og.edge_count(); ++i)
      reversed[static_cast<std::size_t>(i)] = og.edge_count() - 1 - i;
    OracleGraph op = og.with_edge_order(reversed);
    for (int k : kGroups) {
      int bound = analyzer_free(c, k) ? free_bound(k) : 4;
      OracleVerdict a = strong_grading_check(og, k, bound);
      OracleVerdict b = strong_grading_check(op, k, bound);
      expect(a.certified == b.certified, "certified status depends on edge declaration order");
      collect(op, b);
    }
  }
  return true;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report_criterion(1, "theorem-level equivalence on the exhaustive corpus", criterion1);
  ok &= report_criterion(2, "oracle agreement on the exhaustive corpus", criterion2);
  ok &= report_criterion(3, "ideal chain equals brute-force receiver sets", criterion3);
  ok &= report_criterion(4, "named example battery", criterion4);
  ok &= report_criterion(6, "robustness under multiplicity and edge-order changes", criterion6);
  ok &= report_criterion(5, "acyclic dimension count and certificate re-verification", criterion5);
  std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
