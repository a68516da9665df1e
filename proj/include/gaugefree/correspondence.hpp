#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaugefree/graph.hpp"

namespace gaugefree {

// Finite-dimensional commutative correspondence over the functions on a
// finite point set X, captured up to isomorphism by its dimension matrix D:
// D[u][v] is the dimension of the fiber with left action at u and right
// module structure at v.
class CommutativeCorrespondence {
 public:
  CommutativeCorrespondence(std::vector<std::string> points,
                            std::vector<std::vector<ExtendedNat>> dims);

  int point_count() const { return static_cast<int>(points_.size()); }
  const std::vector<std::string>& point_names() const { return points_; }
  const std::string& point_name(int i) const { return points_.at(static_cast<std::size_t>(i)); }
  ExtendedNat dim(int u, int v) const {
    return dims_.at(static_cast<std::size_t>(u)).at(static_cast<std::size_t>(v));
  }
  const std::vector<std::vector<ExtendedNat>>& dims() const { return dims_; }

 private:
  std::vector<std::string> points_;
  std::vector<std::vector<ExtendedNat>> dims_;
};

// Ideal of functions supported on a subset of the points.
struct Ideal {
  VertexSet support;
};

CommutativeCorrespondence from_graph(const DirectedMultigraph& g);

// Every row of D nonzero (the left action has trivial kernel).
bool is_faithful(const CommutativeCorrespondence& c);

// Every entry of D finite (each right fiber finite-dimensional, so the
// identity operator is compact).
bool is_fg(const CommutativeCorrespondence& c);

// Points whose row is nonzero with finite sum: finite emitters that are
// not sinks, in graph terms.
Ideal katsura_ideal(const CommutativeCorrespondence& c);

struct IdealChain {
  std::vector<Ideal> ideals;  // I_0 ... I_m with I_{m+1} = I_m
  bool is_artinian;           // always true in finite dimensions, reported anyway
  int stabilization_index;
};

IdealChain ideal_chain(const CommutativeCorrespondence& c);

// Path in the support digraph of D: points[0], ..., points[length], with
// D[points[i]][points[i+1]] > 0, ending at target = points[length].
struct PointPath {
  int target;
  std::vector<int> points;
};

struct Verdict {
  bool free = false;

  // Condition breakdown for the full circle action.
  bool faithful = false;
  bool finitely_generated = false;
  bool artinian = false;
  std::vector<int> zero_rows;      // faithfulness failures
  std::vector<int> infinite_rows;  // FG failures (rows with an infinite entry)
  int stabilization_index = 0;

  // Z/k verdicts only.
  int k = 0;                              // 0 for the full action
  std::vector<int> uncovered;             // points outside supp(J_E) ∪ supp(I_{k-1})
  std::vector<PointPath> covering_paths;  // length k-1 path into each point outside supp(J_E)
};

// Freeness of the full gauge circle action (faithful + FG + artinian).
Verdict full_gauge_free(const CommutativeCorrespondence& c);

// Freeness of the Z/k gauge action, k >= 2: supp(J_E) ∪ supp(I_{k-1}) = X.
// Throws std::invalid_argument for k < 2.
Verdict zk_gauge_free(const CommutativeCorrespondence& c, int k);

}  // namespace gaugefree
