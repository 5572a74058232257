#pragma once

// Reference implementations used only to cross-check the library. Written
// deliberately straight-line, sharing no helpers with the production code.

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "knotineq/database.hpp"
#include "knotineq/graph.hpp"
#include "knotineq/interval.hpp"
#include "knotineq/registry.hpp"

namespace oracles {

using knotineq::Edge;
using knotineq::InequalityGraph;
using knotineq::Interval;
using knotineq::KnotDatabase;
using knotineq::kUnbounded;
using knotineq::Parity;
using knotineq::Registry;
using knotineq::Value;
using knotineq::VertexDef;

inline std::vector<int> topo_order(const InequalityGraph& g) {
  std::size_t n = g.registry().size();
  std::vector<int> indeg(n, 0);
  for (const Edge& e : g.edges()) ++indeg[e.lesser];
  std::vector<int> order, stack;
  for (int v = 0; v < static_cast<int>(n); ++v) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const Edge& e : g.edges()) {
      if (e.greater == v && --indeg[e.lesser] == 0) stack.push_back(e.lesser);
    }
  }
  return order;  // every edge's greater precedes its lesser
}

struct HullResult {
  bool feasible = false;
  std::vector<Interval> hull;
};

// Pointwise-least and pointwise-greatest solutions over the interval-and-
// parity domains, built greedily along a topological order. The feasible
// set is a sublattice, so the two sweeps give the exact hull.
inline HullResult hull_oracle(const InequalityGraph& g, std::vector<Interval> domain) {
  std::size_t n = g.registry().size();
  std::vector<Value> dlo(n), dhi(n);
  for (std::size_t v = 0; v < n; ++v) {
    Value lo = domain[v].lo();
    Value hi = domain[v].hi();
    if (g.registry().def(static_cast<int>(v)).parity == Parity::Even) {
      if (lo & 1) ++lo;
      if (hi != kUnbounded && (hi & 1)) --hi;
    }
    if (lo > hi) return {};
    dlo[v] = lo;
    dhi[v] = hi;
  }
  std::vector<std::vector<int>> lessers(n), greaters(n);
  for (const Edge& e : g.edges()) {
    lessers[e.greater].push_back(e.lesser);
    greaters[e.lesser].push_back(e.greater);
  }
  std::vector<int> order = topo_order(g);
  std::vector<Value> L(n, 0), U(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    Value need = dlo[v];
    for (int l : lessers[v]) need = std::max(need, L[l]);
    if (g.registry().def(v).parity == Parity::Even && (need & 1)) ++need;
    if (need > dhi[v]) return {};
    L[v] = need;
  }
  for (int v : order) {
    Value cap = dhi[v];
    for (int gg : greaters[v]) cap = std::min(cap, U[gg]);
    if (g.registry().def(v).parity == Parity::Even && cap != kUnbounded && (cap & 1)) {
      --cap;
    }
    if (cap < dlo[v]) return {};
    U[v] = cap;
  }
  HullResult res;
  res.feasible = true;
  for (std::size_t v = 0; v < n; ++v) res.hull.emplace_back(L[v], U[v]);
  return res;
}

// Literal product enumeration; every domain must be finite and small.
inline HullResult enumerate_hull(const InequalityGraph& g,
                                 const std::vector<Interval>& domain) {
  std::size_t n = g.registry().size();
  std::vector<Value> cur(n), best_lo(n), best_hi(n);
  bool any = false;
  std::vector<Value> starts(n), steps(n);
  for (std::size_t v = 0; v < n; ++v) {
    Value lo = domain[v].lo();
    bool even = g.registry().def(static_cast<int>(v)).parity == Parity::Even;
    if (even && (lo & 1)) ++lo;
    starts[v] = lo;
    steps[v] = even ? 2 : 1;
    cur[v] = lo;
  }
  auto check = [&]() {
    for (const Edge& e : g.edges()) {
      if (cur[e.greater] < cur[e.lesser]) return false;
    }
    return true;
  };
  while (true) {
    bool in_range = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (starts[v] > domain[v].hi()) in_range = false;
    }
    if (!in_range) break;
    if (check()) {
      if (!any) {
        best_lo = cur;
        best_hi = cur;
        any = true;
      } else {
        for (std::size_t v = 0; v < n; ++v) {
          best_lo[v] = std::min(best_lo[v], cur[v]);
          best_hi[v] = std::max(best_hi[v], cur[v]);
        }
      }
    }
    std::size_t v = 0;
    for (; v < n; ++v) {
      cur[v] += steps[v];
      if (cur[v] <= domain[v].hi()) break;
      cur[v] = starts[v];
    }
    if (v == n) break;
  }
  HullResult res;
  if (!any) return res;
  res.feasible = true;
  for (std::size_t v = 0; v < n; ++v) res.hull.emplace_back(best_lo[v], best_hi[v]);
  return res;
}

// Floyd-Warshall closure over an explicit pair list.
inline std::vector<std::vector<bool>> closure_fw(
    std::size_t n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : pairs) reach[a][b] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

struct NaiveTally {
  int x = -1;
  int y = -1;
  std::size_t violations = 0;
  std::size_t equalities = 0;
  std::size_t stricts = 0;
  std::size_t undetermined = 0;
};

// Independent pair scan: Floyd-Warshall for the closure skip, plain loops
// for the witness counts.
inline std::vector<NaiveTally> naive_mine(const KnotDatabase& db, const InequalityGraph& g,
                                          const std::vector<std::pair<int, int>>& excluded,
                                          bool exact_only) {
  std::size_t n = g.registry().size();
  std::vector<std::pair<int, int>> arcs;
  for (const Edge& e : g.edges()) arcs.emplace_back(e.greater, e.lesser);
  auto reach = closure_fw(n, arcs);
  std::vector<NaiveTally> out;
  for (int x = 0; x < static_cast<int>(n); ++x) {
    for (int y = 0; y < static_cast<int>(n); ++y) {
      if (x == y || reach[x][y]) continue;
      bool skip = false;
      for (const auto& [a, b] : excluded) {
        if ((a == x && b == y) || (a == y && b == x)) skip = true;
      }
      if (skip) continue;
      NaiveTally t;
      t.x = x;
      t.y = y;
      for (const auto& rec : db.records()) {
        const Interval& ix = rec.values[x];
        const Interval& iy = rec.values[y];
        if (exact_only && !(ix.exact() && iy.exact())) {
          ++t.undetermined;
        } else if (ix.hi() < iy.lo()) {
          ++t.violations;
        } else if (ix.lo() == ix.hi() && iy.lo() == iy.hi() && ix.lo() == iy.lo()) {
          ++t.equalities;
        } else if (ix.lo() > iy.hi()) {
          ++t.stricts;
        } else {
          ++t.undetermined;
        }
      }
      out.push_back(t);
    }
  }
  return out;
}

// Every smallest generating subset by direct enumeration; callers assert
// there is exactly one. Only practical for |extra| <= ~16.
inline std::vector<std::vector<std::pair<int, int>>> smallest_generators(
    std::size_t n, const std::vector<std::pair<int, int>>& base,
    const std::vector<std::pair<int, int>>& extra) {
  auto generates = [&](unsigned mask) {
    std::vector<std::pair<int, int>> arcs = base;
    for (std::size_t i = 0; i < extra.size(); ++i) {
      if (mask & (1u << i)) arcs.push_back(extra[i]);
    }
    auto reach = closure_fw(n, arcs);
    for (const auto& [a, b] : extra) {
      if (!reach[a][b]) return false;
    }
    return true;
  };
  std::vector<std::vector<std::pair<int, int>>> winners;
  for (std::size_t size = 0; size <= extra.size(); ++size) {
    for (unsigned mask = 0; mask < (1u << extra.size()); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      if (!generates(mask)) continue;
      std::vector<std::pair<int, int>> subset;
      for (std::size_t i = 0; i < extra.size(); ++i) {
        if (mask & (1u << i)) subset.push_back(extra[i]);
      }
      winners.push_back(std::move(subset));
    }
    if (!winners.empty()) return winners;
  }
  return winners;
}

// A registry of n plain vertices (ids v0..v(n-1)), parity even with the
// given probability.
inline Registry plain_registry(int n, std::mt19937_64& rng, double even_prob = 0.4) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Registry reg;
  for (int v = 0; v < n; ++v) {
    VertexDef def;
    def.id = "v" + std::to_string(v);
    def.display = def.id;
    def.base_invariant = "synthetic " + std::to_string(v);
    def.parity = coin(rng) < even_prob ? Parity::Even : Parity::Any;
    reg.add(def);
  }
  return reg;
}

// Acyclic by construction: every edge points from a higher index to a
// lower one.
inline InequalityGraph random_dag(int n, double edge_prob, std::mt19937_64& rng,
                                  double even_prob = 0.4) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Registry reg = plain_registry(n, rng, even_prob);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (coin(rng) < edge_prob) {
        Edge e;
        e.label = static_cast<int>(edges.size()) + 1;
        e.greater = i;
        e.lesser = j;
        e.citation = "Syn" + std::to_string(e.label);
        edges.push_back(e);
      }
    }
  }
  return InequalityGraph(std::move(reg), std::move(edges));
}

inline std::vector<Interval> random_domain(std::size_t n, std::mt19937_64& rng,
                                           Value max_lo = 50, Value max_width = 50,
                                           double fill = 0.6, double unbounded = 0.25) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Value> lo_dist(0, max_lo);
  std::uniform_int_distribution<Value> width_dist(0, max_width);
  std::vector<Interval> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (coin(rng) > fill) continue;  // stays [0, inf)
    Value lo = lo_dist(rng);
    if (coin(rng) < unbounded) {
      out[v] = Interval(lo, kUnbounded);
    } else {
      out[v] = Interval(lo, lo + width_dist(rng));
    }
  }
  return out;
}

}  // namespace oracles
