#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "knotineq/registry.hpp"

namespace knotineq {

// Directed inequality: greater(K) >= lesser(K) for every knot K.
struct Edge {
  int label = 0;  // 1-based, unique, contiguous
  int greater = 0;
  int lesser = 0;
  std::string citation;
};

// The vertex registry plus the labeled inequality edges. Immutable after
// load; validated to be acyclic with contiguous labels.
class InequalityGraph {
 public:
  InequalityGraph() = default;
  InequalityGraph(Registry registry, std::vector<Edge> edges);

  const Registry& registry() const { return registry_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[index]; }

  // Edge indices touching a vertex (as greater or lesser).
  const std::vector<int>& incident(int vertex) const { return incident_[vertex]; }

  // Edge index by 1-based label, or -1.
  int edge_by_label(int label) const;

 private:
  Registry registry_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> label_to_edge_;
};

// Loads a graph description document:
//   [vertices] section, one per line: id, display, base invariant,
//     transform, source class (tab-separated);
//   [edges] section, one per line: label, greater, lesser, citation.
// Full-line # comments and blank lines are skipped. Throws GraphSpecError
// on duplicate edges, unknown vertices, cycles, or label gaps.
InequalityGraph load_graph(std::istream& in);
InequalityGraph load_graph_file(const std::string& path);

// Applies a parity table (vertex<TAB>even|any, one per line) onto the
// graph's registry. Every registered vertex must be covered exactly once.
void load_parity_table(std::istream& in, InequalityGraph& g);
void load_parity_table_file(const std::string& path, InequalityGraph& g);

// Dense reachability relation over n vertices. reaches(i, j) means a
// directed path i -> ... -> j exists (irreflexive).
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool reaches(int i, int j) const { return bits_[i * n_ + j] != 0; }
  void set(int i, int j) { bits_[i * n_ + j] = 1; }

  std::size_t pair_count() const;
  bool operator==(const Relation&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Irreflexive transitive closure of the graph's edges.
Relation transitive_closure(const InequalityGraph& g);

// Closure of an arbitrary pair list over n vertices (worklist BFS from each
// vertex).
Relation closure_of_pairs(std::size_t n, const std::vector<std::pair<int, int>>& pairs);

// Subset B of `extra` such that closure(base union B) still contains every
// pair of `extra` and no member of B can be dropped. Pairs already derivable
// are removed in ascending (greater, lesser) order, iterating to stability,
// so the result is reproducible. When the extra pairs are acyclic this
// irreducible subset is the unique minimum one.
std::vector<std::pair<int, int>> transitive_reduction_modulo(
    const Relation& base, std::vector<std::pair<int, int>> extra);

// Deterministic DOT rendering: one node per vertex labeled with its display
// expression, one arrow per edge labeled with its number.
std::string export_dot(const InequalityGraph& g);

}  // namespace knotineq
