#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaugefree {

// Natural number extended with infinity. Addition saturates at infinity.
class ExtendedNat {
 public:
  constexpr ExtendedNat() : value_(0) {}
  constexpr ExtendedNat(std::uint64_t v) : value_(v) {}

  static constexpr ExtendedNat infinity() {
    ExtendedNat n;
    n.value_ = kInf;
    return n;
  }

  constexpr bool is_infinite() const { return value_ == kInf; }
  constexpr bool is_zero() const { return value_ == 0; }

  // Only valid on finite values.
  std::uint64_t finite_value() const {
    if (is_infinite()) throw std::logic_error("finite_value() on infinite ExtendedNat");
    return value_;
  }

  friend constexpr bool operator==(ExtendedNat a, ExtendedNat b) { return a.value_ == b.value_; }
  friend constexpr bool operator!=(ExtendedNat a, ExtendedNat b) { return a.value_ != b.value_; }
  friend constexpr bool operator<(ExtendedNat a, ExtendedNat b) { return a.value_ < b.value_; }
  friend constexpr bool operator<=(ExtendedNat a, ExtendedNat b) { return a.value_ <= b.value_; }

  friend ExtendedNat operator+(ExtendedNat a, ExtendedNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    if (a.value_ > kInf - 1 - b.value_) return infinity();
    return ExtendedNat(a.value_ + b.value_);
  }

  std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_;
};

// Subset of the vertices of a fixed graph (or of the points of a fixed
// correspondence), indexed by declaration order.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, false) {}

  std::size_t universe_size() const { return bits_.size(); }
  bool contains(int v) const { return bits_.at(static_cast<std::size_t>(v)); }
  void insert(int v) { bits_.at(static_cast<std::size_t>(v)) = true; }
  void erase(int v) { bits_.at(static_cast<std::size_t>(v)) = false; }

  std::size_t count() const;
  bool empty() const { return count() == 0; }

  VertexSet complement() const;
  VertexSet unite(const VertexSet& other) const;
  VertexSet intersect(const VertexSet& other) const;
  bool subset_of(const VertexSet& other) const;

  // Member indices in increasing order.
  std::vector<int> members() const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }
  friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }

 private:
  std::vector<bool> bits_;
};

struct GraphEdge {
  std::string id;
  int src;
  int dst;
};

// Finite directed multigraph. Finite parallel edges are kept individually;
// infinitely many parallel edges from u to v are recorded once as a bundle
// (u, v). Vertex and edge identifiers are opaque strings; all index-based
// APIs use declaration order.
class DirectedMultigraph {
 public:
  DirectedMultigraph(std::vector<std::string> vertices,
                     std::vector<std::array<std::string, 3>> edges,  // {id, src, dst}
                     std::vector<std::pair<std::string, std::string>> infinite_bundles = {});

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const std::string& vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  int vertex_index(const std::string& name) const;  // throws on unknown name

  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<std::pair<int, int>>& infinite_bundles() const { return bundles_; }

  // Number of edges u -> v, saturating to infinity on a bundle.
  ExtendedNat multiplicity(int u, int v) const;

  // True if some finite edge or bundle goes u -> v.
  bool has_arrow(int u, int v) const { return !multiplicity(u, v).is_zero(); }

 private:
  std::vector<std::string> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<std::pair<int, int>> bundles_;
};

VertexSet sinks(const DirectedMultigraph& g);
VertexSet sources(const DirectedMultigraph& g);
VertexSet infinite_emitters(const DirectedMultigraph& g);
bool is_row_finite(const DirectedMultigraph& g);

// S_n: vertices receiving a directed path of length >= n (equivalently,
// exactly n). Bundles count as edges. S_0 is the whole vertex set.
VertexSet receivers_at_least(const DirectedMultigraph& g, int n);

struct ReceiverChain {
  std::vector<VertexSet> sets;  // S_0 ... S_{m} with S_{m+1} = S_m, m = stabilization_index
  int stabilization_index;
};

ReceiverChain receiver_chain(const DirectedMultigraph& g);

}  // namespace gaugefree
