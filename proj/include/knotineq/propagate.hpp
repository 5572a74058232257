#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "knotineq/database.hpp"
#include "knotineq/graph.hpp"

namespace knotineq {

// Worklist seeds edges incident to changed vertices; Sweep repeats full
// passes over all edges until none fires. Same fixed point either way.
enum class Kernel { Worklist, Sweep };

struct PropagateOptions {
  bool strict = false;  // contradictions throw instead of skipping the knot
  int jobs = 0;         // 0 = library default thread count
  Kernel kernel = Kernel::Worklist;
  std::uint64_t seed = 0;  // shuffles worklist service order; result identical
};

struct PropagateSummary {
  std::size_t knots = 0;
  std::size_t events = 0;            // bound tightenings, parity included
  std::size_t contradictions = 0;    // knots skipped (non-strict mode)
  std::vector<std::string> skipped;  // their ids, in record order
};

// Runs every knot to its fixed point in place, appending to the per-knot
// event logs. In non-strict mode a contradictory knot keeps its pre-call
// values and is reported in `skipped`.
PropagateSummary propagate(KnotDatabase& db, const InequalityGraph& g,
                           const PropagateOptions& opts = {});

// Serial reference implementation with the same contract; the parallel
// driver is checked against it.
PropagateSummary propagate_serial(KnotDatabase& db, const InequalityGraph& g,
                                  const PropagateOptions& opts = {});

// True iff no edge or parity rule can tighten any bound of any record.
bool is_fixed_point(const KnotDatabase& db, const InequalityGraph& g);

// Cell-level difference categories between a before and an after database.
enum class DiffCategory {
  Unchanged,
  NewExact,        // was non-exact, now exact
  TightenedBoth,   // both endpoints moved, still non-exact
  TightenedLower,  // only lo moved
  TightenedUpper,  // only hi moved
};

std::string diff_category_to_string(DiffCategory c);

struct DiffRow {
  std::string knot;
  int vertex = -1;
  Interval before;
  Interval after;
  DiffCategory category = DiffCategory::Unchanged;
};

struct DiffReport {
  std::vector<DiffRow> rows;  // changed cells only, record then vertex order
  std::size_t new_exact = 0;
  std::size_t tightened_lower = 0;
  std::size_t tightened_upper = 0;
  std::size_t tightened_both = 0;
  std::size_t unchanged = 0;
  std::size_t total_changes() const {
    return new_exact + tightened_lower + tightened_upper + tightened_both;
  }
};

// Databases must agree on registry and record ids (MismatchedDatabasesError
// otherwise). `after` must not loosen any bound.
DiffReport diff(const KnotDatabase& before, const KnotDatabase& after);

// knot,vertex,before_lo,before_hi,after_lo,after_hi,category rows in report
// order, with a header row.
void write_diff_csv(std::ostream& out, const DiffReport& report, const Registry& registry);

// Total counts plus a per-vertex breakdown of the changed cells.
std::string diff_summary(const DiffReport& report, const Registry& registry);

}  // namespace knotineq
