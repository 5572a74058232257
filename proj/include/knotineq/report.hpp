#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "knotineq/database.hpp"
#include "knotineq/graph.hpp"

namespace knotineq {

// A golden list pins one vertex to an exact value for a set of knots
// ("every knot on this list must end with 2u == [4,4]", say).
struct GoldenList {
  std::string name;
  int vertex = -1;
  Value expected = 0;
  std::vector<std::string> knots;  // normalized
};

// File format: `#` comments, then a `vertex<TAB>value` header line, then one
// knot name per line.
GoldenList load_golden_list(std::istream& in, const std::string& name,
                            const Registry& registry);
GoldenList load_golden_list_file(const std::string& path, const Registry& registry);

struct GoldenFailure {
  std::string knot;
  std::string reason;  // "missing", or the actual interval
};

struct GoldenOutcome {
  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::vector<GoldenFailure> failures;
  bool ok() const { return failures.empty(); }
};

GoldenOutcome check_golden(const KnotDatabase& db, const GoldenList& list);

// Renders one outcome as "name: passed/checked" plus failure detail lines.
std::string golden_report(const GoldenOutcome& outcome);

// Walks a bound's event history backwards: the event that set the current
// bound, then the events that set the bounds its cause read, and so on, up
// to `max_depth` links. Produces one indented line per step. Bounds with no
// event behind them are labeled as initial bounds.
std::string explain(const KnotDatabase& db, const InequalityGraph& g,
                    const std::string& knot, const std::string& vertex,
                    int max_depth = 20);

}  // namespace knotineq
