#include "gaugefree/correspondence.hpp"

#include <algorithm>

namespace gaugefree {

CommutativeCorrespondence::CommutativeCorrespondence(std::vector<std::string> points,
                                                     std::vector<std::vector<ExtendedNat>> dims)
    : points_(std::move(points)), dims_(std::move(dims)) {
  if (points_.empty()) throw std::invalid_argument("correspondence must have at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i] == points_[j]) throw std::invalid_argument("duplicate point id: " + points_[i]);
  if (dims_.size() != points_.size()) throw std::invalid_argument("dimension matrix is not square");
  for (const auto& row : dims_)
    if (row.size() != points_.size()) throw std::invalid_argument("dimension matrix is not square");
}

CommutativeCorrespondence from_graph(const DirectedMultigraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<ExtendedNat>> dims(static_cast<std::size_t>(n),
                                             std::vector<ExtendedNat>(static_cast<std::size_t>(n)));
  for (const auto& e : g.edges()) {
    auto& cell = dims[static_cast<std::size_t>(e.src)][static_cast<std::size_t>(e.dst)];
    cell = cell + ExtendedNat(1);
  }
  for (const auto& b : g.infinite_bundles())
    dims[static_cast<std::size_t>(b.first)][static_cast<std::size_t>(b.second)] = ExtendedNat::infinity();
  return CommutativeCorrespondence(g.vertex_names(), std::move(dims));
}

namespace {

bool row_is_zero(const CommutativeCorrespondence& c, int u) {
  for (int v = 0; v < c.point_count(); ++v)
    if (!c.dim(u, v).is_zero()) return false;
  return true;
}

bool row_has_infinite_entry(const CommutativeCorrespondence& c, int u) {
  for (int v = 0; v < c.point_count(); ++v)
    if (c.dim(u, v).is_infinite()) return true;
  return false;
}

VertexSet ideal_step(const CommutativeCorrespondence& c, const VertexSet& s) {
  VertexSet next(static_cast<std::size_t>(c.point_count()));
  for (int u = 0; u < c.point_count(); ++u) {
    if (!s.contains(u)) continue;
    for (int v = 0; v < c.point_count(); ++v)
      if (!c.dim(u, v).is_zero()) next.insert(v);
  }
  return next;
}

}  // namespace

bool is_faithful(const CommutativeCorrespondence& c) {
  for (int u = 0; u < c.point_count(); ++u)
    if (row_is_zero(c, u)) return false;
  return true;
}

bool is_fg(const CommutativeCorrespondence& c) {
  for (int u = 0; u < c.point_count(); ++u)
    if (row_has_infinite_entry(c, u)) return false;
  return true;
}

Ideal katsura_ideal(const CommutativeCorrespondence& c) {
  VertexSet supp(static_cast<std::size_t>(c.point_count()));
  for (int u = 0; u < c.point_count(); ++u)
    if (!row_is_zero(c, u) && !row_has_infinite_entry(c, u)) supp.insert(u);
  return Ideal{supp};
}

IdealChain ideal_chain(const CommutativeCorrespondence& c) {
  IdealChain chain;
  VertexSet s = VertexSet(static_cast<std::size_t>(c.point_count())).complement();  // I_0 = A
  chain.ideals.push_back(Ideal{s});
  for (;;) {
    VertexSet next = ideal_step(c, s);
    if (next == s) break;
    chain.ideals.push_back(Ideal{next});
    s = next;
  }
  chain.is_artinian = true;  // the chain always stabilizes over a finite point set
  chain.stabilization_index = static_cast<int>(chain.ideals.size()) - 1;
  return chain;
}

Verdict full_gauge_free(const CommutativeCorrespondence& c) {
  Verdict v;
  v.k = 0;
  for (int u = 0; u < c.point_count(); ++u) {
    if (row_is_zero(c, u)) v.zero_rows.push_back(u);
    if (row_has_infinite_entry(c, u)) v.infinite_rows.push_back(u);
  }
  v.faithful = v.zero_rows.empty();
  v.finitely_generated = v.infinite_rows.empty();
  IdealChain chain = ideal_chain(c);
  v.artinian = chain.is_artinian;
  v.stabilization_index = chain.stabilization_index;
  v.free = v.faithful && v.finitely_generated && v.artinian;
  return v;
}

Verdict zk_gauge_free(const CommutativeCorrespondence& c, int k) {
  if (k < 2) throw std::invalid_argument("zk_gauge_free requires k >= 2");
  Verdict v;
  v.k = k;
  for (int u = 0; u < c.point_count(); ++u) {
    if (row_is_zero(c, u)) v.zero_rows.push_back(u);
    if (row_has_infinite_entry(c, u)) v.infinite_rows.push_back(u);
  }
  v.faithful = v.zero_rows.empty();
  v.finitely_generated = v.infinite_rows.empty();

  IdealChain chain = ideal_chain(c);
  v.artinian = chain.is_artinian;
  v.stabilization_index = chain.stabilization_index;

  // supp(I_{k-1}); the chain is constant past its stabilization index.
  int idx = std::min(k - 1, chain.stabilization_index);
  const VertexSet& covered = chain.ideals[static_cast<std::size_t>(idx)].support;

  VertexSet je = katsura_ideal(c).support;
  VertexSet both = je.unite(covered);
  v.uncovered = both.complement().members();
  v.free = v.uncovered.empty();

  if (v.free) {
    // A path of length k-1 into every point outside supp(J_E) (sinks and
    // infinite emitters), walked back through the layered chain.
    std::vector<const VertexSet*> layers;
    for (int n = 0; n <= k - 1; ++n) {
      int li = std::min(n, chain.stabilization_index);
      layers.push_back(&chain.ideals[static_cast<std::size_t>(li)].support);
    }
    for (int t : je.complement().members()) {
      PointPath path;
      path.target = t;
      std::vector<int> rev{t};
      int cur = t;
      for (int n = k - 1; n >= 1; --n) {
        // cur ∈ supp(I_n); pick a predecessor in supp(I_{n-1}).
        for (int u = 0; u < c.point_count(); ++u) {
          if (layers[static_cast<std::size_t>(n - 1)]->contains(u) && !c.dim(u, cur).is_zero()) {
            rev.push_back(u);
            cur = u;
            break;
          }
        }
      }
      path.points.assign(rev.rbegin(), rev.rend());
      v.covering_paths.push_back(std::move(path));
    }
  }
  return v;
}

}  // namespace gaugefree
