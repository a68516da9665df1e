#include "gaugefree/graph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace gaugefree {

std::size_t VertexSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

VertexSet VertexSet::complement() const {
  VertexSet r(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = !bits_[i];
  return r;
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  if (other.bits_.size() != bits_.size()) throw std::invalid_argument("VertexSet universe mismatch");
  VertexSet r(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] || other.bits_[i];
  return r;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
  if (other.bits_.size() != bits_.size()) throw std::invalid_argument("VertexSet universe mismatch");
  VertexSet r(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] && other.bits_[i];
  return r;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  if (other.bits_.size() != bits_.size()) throw std::invalid_argument("VertexSet universe mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<int>(i));
  return out;
}

DirectedMultigraph::DirectedMultigraph(std::vector<std::string> vertices,
                                       std::vector<std::array<std::string, 3>> edges,
                                       std::vector<std::pair<std::string, std::string>> infinite_bundles)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("graph must have at least one vertex");
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index.emplace(vertices_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate vertex id: " + vertices_[i]);
  }
  std::unordered_set<std::string> edge_ids;
  for (const auto& e : edges) {
    if (!edge_ids.insert(e[0]).second) throw std::invalid_argument("duplicate edge id: " + e[0]);
    auto s = index.find(e[1]);
    if (s == index.end()) throw std::invalid_argument("edge " + e[0] + ": unknown source vertex " + e[1]);
    auto r = index.find(e[2]);
    if (r == index.end()) throw std::invalid_argument("edge " + e[0] + ": unknown range vertex " + e[2]);
    edges_.push_back(GraphEdge{e[0], s->second, r->second});
  }
  std::unordered_set<long long> bundle_keys;
  for (const auto& b : infinite_bundles) {
    auto s = index.find(b.first);
    if (s == index.end()) throw std::invalid_argument("infinite bundle: unknown source vertex " + b.first);
    auto r = index.find(b.second);
    if (r == index.end()) throw std::invalid_argument("infinite bundle: unknown range vertex " + b.second);
    long long key = static_cast<long long>(s->second) * static_cast<long long>(vertices_.size() + 1) + r->second;
    if (!bundle_keys.insert(key).second)
      throw std::invalid_argument("duplicate infinite bundle (" + b.first + ", " + b.second + ")");
    bundles_.emplace_back(s->second, r->second);
  }
}

int DirectedMultigraph::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown vertex: " + name);
}

ExtendedNat DirectedMultigraph::multiplicity(int u, int v) const {
  for (const auto& b : bundles_)
    if (b.first == u && b.second == v) return ExtendedNat::infinity();
  std::uint64_t n = 0;
  for (const auto& e : edges_)
    if (e.src == u && e.dst == v) ++n;
  return ExtendedNat(n);
}

VertexSet sinks(const DirectedMultigraph& g) {
  VertexSet out(static_cast<std::size_t>(g.vertex_count()));
  std::vector<bool> emits(static_cast<std::size_t>(g.vertex_count()), false);
  for (const auto& e : g.edges()) emits[static_cast<std::size_t>(e.src)] = true;
  for (const auto& b : g.infinite_bundles()) emits[static_cast<std::size_t>(b.first)] = true;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!emits[static_cast<std::size_t>(v)]) out.insert(v);
  return out;
}

VertexSet sources(const DirectedMultigraph& g) {
  VertexSet out(static_cast<std::size_t>(g.vertex_count()));
  std::vector<bool> receives(static_cast<std::size_t>(g.vertex_count()), false);
  for (const auto& e : g.edges()) receives[static_cast<std::size_t>(e.dst)] = true;
  for (const auto& b : g.infinite_bundles()) receives[static_cast<std::size_t>(b.second)] = true;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!receives[static_cast<std::size_t>(v)]) out.insert(v);
  return out;
}

VertexSet infinite_emitters(const DirectedMultigraph& g) {
  VertexSet out(static_cast<std::size_t>(g.vertex_count()));
  for (const auto& b : g.infinite_bundles()) out.insert(b.first);
  return out;
}

bool is_row_finite(const DirectedMultigraph& g) { return infinite_emitters(g).empty(); }

namespace {

VertexSet step_forward(const DirectedMultigraph& g, const VertexSet& s) {
  VertexSet next(static_cast<std::size_t>(g.vertex_count()));
  for (const auto& e : g.edges())
    if (s.contains(e.src)) next.insert(e.dst);
  for (const auto& b : g.infinite_bundles())
    if (s.contains(b.first)) next.insert(b.second);
  return next;
}

}  // namespace

VertexSet receivers_at_least(const DirectedMultigraph& g, int n) {
  if (n < 0) throw std::invalid_argument("receivers_at_least: n must be nonnegative");
  VertexSet s = VertexSet(static_cast<std::size_t>(g.vertex_count())).complement();  // S_0 = all
  for (int i = 0; i < n; ++i) s = step_forward(g, s);
  return s;
}

ReceiverChain receiver_chain(const DirectedMultigraph& g) {
  ReceiverChain chain;
  VertexSet s = VertexSet(static_cast<std::size_t>(g.vertex_count())).complement();
  chain.sets.push_back(s);
  for (;;) {
    VertexSet next = step_forward(g, s);
    if (next == s) break;
    chain.sets.push_back(next);
    s = next;
  }
  chain.stabilization_index = static_cast<int>(chain.sets.size()) - 1;
  return chain;
}

}  // namespace gaugefree
