#include "knotineq/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "knotineq/csv.hpp"
#include "knotineq/error.hpp"

namespace knotineq {

InequalityGraph::InequalityGraph(Registry registry, std::vector<Edge> edges)
    : registry_(std::move(registry)), edges_(std::move(edges)) {
  int n = static_cast<int>(registry_.size());
  incident_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  int max_label = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.greater < 0 || e.greater >= n || e.lesser < 0 || e.lesser >= n) {
      throw GraphSpecError(GraphSpecError::Kind::UnknownVertex,
                           "edge " + std::to_string(e.label) + " endpoint out of range");
    }
    if (e.greater == e.lesser) {
      throw GraphSpecError(GraphSpecError::Kind::Malformed,
                           "edge " + std::to_string(e.label) + " is a self loop");
    }
    if (!seen.emplace(e.greater, e.lesser).second) {
      throw GraphSpecError(GraphSpecError::Kind::DuplicateEdge,
                           registry_.def(e.greater).id + " >= " + registry_.def(e.lesser).id +
                               " listed twice");
    }
    if (e.label <= 0) {
      throw GraphSpecError(GraphSpecError::Kind::LabelGap,
                           "edge label " + std::to_string(e.label) + " must be positive");
    }
    max_label = std::max(max_label, e.label);
    incident_[e.greater].push_back(static_cast<int>(i));
    incident_[e.lesser].push_back(static_cast<int>(i));
  }
  label_to_edge_.assign(max_label + 1, -1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    int l = edges_[i].label;
    if (label_to_edge_[l] != -1) {
      throw GraphSpecError(GraphSpecError::Kind::LabelGap,
                           "edge label " + std::to_string(l) + " reused");
    }
    label_to_edge_[l] = static_cast<int>(i);
  }
  for (int l = 1; l <= max_label; ++l) {
    if (label_to_edge_[l] == -1) {
      throw GraphSpecError(GraphSpecError::Kind::LabelGap,
                           "edge label " + std::to_string(l) + " missing");
    }
  }

  // Kahn's algorithm on greater -> lesser arcs; leftovers mean a cycle.
  std::vector<int> indeg(n, 0);
  for (const Edge& e : edges_) ++indeg[e.lesser];
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  int visited = 0;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int v = queue[q];
    ++visited;
    for (int ei : incident_[v]) {
      const Edge& e = edges_[ei];
      if (e.greater != v) continue;
      if (--indeg[e.lesser] == 0) queue.push_back(e.lesser);
    }
  }
  if (visited != n) {
    throw GraphSpecError(GraphSpecError::Kind::CycleDetected,
                         "inequality edges form a directed cycle");
  }
}

int InequalityGraph::edge_by_label(int label) const {
  if (label <= 0 || label >= static_cast<int>(label_to_edge_.size())) return -1;
  return label_to_edge_[label];
}

InequalityGraph load_graph(std::istream& in) {
  Registry registry;
  std::vector<Edge> edges;
  enum class Section { None, Vertices, Edges };
  Section section = Section::None;
  std::string raw, line;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!config_line(raw, line)) continue;
    if (line == "[vertices]") {
      section = Section::Vertices;
      continue;
    }
    if (line == "[edges]") {
      section = Section::Edges;
      continue;
    }
    auto fields = split_tab(line);
    if (section == Section::Vertices) {
      if (fields.size() != 5) {
        throw GraphSpecError(GraphSpecError::Kind::Malformed,
                             "line " + std::to_string(lineno) + ": vertex rows need 5 fields");
      }
      VertexDef def;
      def.id = fields[0];
      def.display = fields[1];
      def.base_invariant = fields[2];
      def.transform = parse_transform(fields[3]);
      def.source_class = parse_source_class(fields[4]);
      registry.add(std::move(def));
    } else if (section == Section::Edges) {
      if (fields.size() != 4) {
        throw GraphSpecError(GraphSpecError::Kind::Malformed,
                             "line " + std::to_string(lineno) + ": edge rows need 4 fields");
      }
      Edge e;
      try {
        e.label = std::stoi(fields[0]);
      } catch (const std::exception&) {
        throw GraphSpecError(GraphSpecError::Kind::Malformed,
                             "line " + std::to_string(lineno) + ": bad edge label '" + fields[0] + "'");
      }
      int g = registry.find(fields[1]);
      int l = registry.find(fields[2]);
      if (g < 0) {
        throw GraphSpecError(GraphSpecError::Kind::UnknownVertex, "'" + fields[1] + "'");
      }
      if (l < 0) {
        throw GraphSpecError(GraphSpecError::Kind::UnknownVertex, "'" + fields[2] + "'");
      }
      e.greater = g;
      e.lesser = l;
      e.citation = fields[3];
      edges.push_back(std::move(e));
    } else {
      throw GraphSpecError(GraphSpecError::Kind::Malformed,
                           "line " + std::to_string(lineno) + ": content before any section");
    }
  }
  return InequalityGraph(std::move(registry), std::move(edges));
}

InequalityGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_graph(in);
}

void load_parity_table(std::istream& in, InequalityGraph& g) {
  // The registry lives inside the graph; rebuild it with parities set.
  Registry updated;
  std::vector<Parity> parities(g.registry().size(), Parity::Any);
  std::vector<bool> covered(g.registry().size(), false);
  std::string raw, line;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!config_line(raw, line)) continue;
    auto fields = split_tab(line);
    if (fields.size() != 2) {
      throw ParseError("parity line " + std::to_string(lineno) + " needs 2 fields");
    }
    int v = g.registry().find(fields[0]);
    if (v < 0) throw UnknownVertexError(fields[0]);
    if (covered[v]) {
      throw ParseError("vertex '" + fields[0] + "' has two parity entries");
    }
    covered[v] = true;
    parities[v] = parse_parity(fields[1]);
  }
  for (std::size_t v = 0; v < covered.size(); ++v) {
    if (!covered[v]) {
      throw ParseError("vertex '" + g.registry().def(static_cast<int>(v)).id +
                       "' missing from parity table");
    }
  }
  for (std::size_t v = 0; v < parities.size(); ++v) {
    VertexDef def = g.registry().def(static_cast<int>(v));
    def.parity = parities[v];
    updated.add(std::move(def));
  }
  g = InequalityGraph(std::move(updated), g.edges());
}

void load_parity_table_file(const std::string& path, InequalityGraph& g) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  load_parity_table(in, g);
}

std::size_t Relation::pair_count() const {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

Relation closure_of_pairs(std::size_t n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::vector<int>> succ(n);
  for (const auto& [a, b] : pairs) succ[a].push_back(b);
  Relation r(n);
  std::vector<int> stack;
  std::vector<bool> seen(n);
  for (std::size_t start = 0; start < n; ++start) {
    std::fill(seen.begin(), seen.end(), false);
    stack.assign(succ[start].begin(), succ[start].end());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = true;
      r.set(static_cast<int>(start), v);
      for (int w : succ[v]) {
        if (!seen[w]) stack.push_back(w);
      }
    }
  }
  return r;
}

Relation transitive_closure(const InequalityGraph& g) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(g.edges().size());
  for (const Edge& e : g.edges()) pairs.emplace_back(e.greater, e.lesser);
  return closure_of_pairs(g.registry().size(), pairs);
}

std::vector<std::pair<int, int>> transitive_reduction_modulo(
    const Relation& base, std::vector<std::pair<int, int>> extra) {
  std::size_t n = base.size();
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());

  // Greedy removal in ascending order: drop a pair when base plus the other
  // survivors still derive it. Each removal reroutes derivations through the
  // dropped pair, so the closure over the original extra is preserved at
  // every step, cycles included.
  auto derives = [&](const std::vector<std::pair<int, int>>& kept, int a, int b) {
    // BFS from a over (base union kept) arcs, looking for b. Base is a full
    // relation, kept is a pair list.
    std::vector<bool> seen(n, false);
    std::vector<int> stack{a};
    seen[a] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        if (!seen[w] && base.reaches(v, static_cast<int>(w))) {
          if (static_cast<int>(w) == b) return true;
          seen[w] = true;
          stack.push_back(static_cast<int>(w));
        }
      }
      for (const auto& [p, q] : kept) {
        if (p == v && !seen[q]) {
          if (q == b) return true;
          seen[q] = true;
          stack.push_back(q);
        }
      }
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < extra.size(); ++i) {
      std::vector<std::pair<int, int>> rest;
      rest.reserve(extra.size() - 1);
      for (std::size_t j = 0; j < extra.size(); ++j) {
        if (j != i) rest.push_back(extra[j]);
      }
      if (derives(rest, extra[i].first, extra[i].second)) {
        extra = std::move(rest);
        changed = true;
        break;
      }
    }
  }
  return extra;
}

std::string export_dot(const InequalityGraph& g) {
  std::ostringstream out;
  out << "digraph inequalities {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=box];\n";
  for (std::size_t v = 0; v < g.registry().size(); ++v) {
    const auto& def = g.registry().def(static_cast<int>(v));
    out << "  \"" << def.id << "\" [label=\"" << def.display << "\"];\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  \"" << g.registry().def(e.greater).id << "\" -> \""
        << g.registry().def(e.lesser).id << "\" [label=\"" << e.label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace knotineq
