#include "knotineq/propagate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "knotineq/csv.hpp"
#include "knotineq/error.hpp"

namespace knotineq {

namespace {

// Fixed-point engine for one record. Mutates the record and appends to its
// event log; throws ContradictionError (vertex attached, knot added by the
// caller) and leaves cleanup to the caller.
class KnotEngine {
 public:
  KnotEngine(KnotRecord& rec, std::vector<PropagationEvent>& log, const InequalityGraph& g)
      : rec_(rec), log_(log), g_(g) {}

  void run(Kernel kernel, std::uint64_t seed) {
    parity_sweep();
    if (kernel == Kernel::Sweep) {
      sweep();
    } else {
      worklist(seed);
    }
  }

 private:
  KnotRecord& rec_;
  std::vector<PropagationEvent>& log_;
  const InequalityGraph& g_;
  std::vector<char> queued_;
  std::deque<int> queue_;
  bool changed_ = false;  // set by tighten_*, read per edge application

  const Interval& at(int v) const { return rec_.values[v]; }

  void contradiction(int v, const std::string& detail) {
    throw ContradictionError(detail + " at " + at(v).to_string(), "",
                             g_.registry().def(v).id);
  }

  void round_lo(int v) {
    if (g_.registry().def(v).parity != Parity::Even) return;
    Value lo = at(v).lo();
    if (!(lo & 1)) return;
    if (lo + 1 > at(v).hi()) contradiction(v, "no even value above " + std::to_string(lo));
    log_.push_back({v, BoundSide::Lower, lo, lo + 1, Cause::parity()});
    rec_.values[v] = Interval(lo + 1, at(v).hi());
  }

  void round_hi(int v) {
    if (g_.registry().def(v).parity != Parity::Even) return;
    Value hi = at(v).hi();
    if (hi == kUnbounded || !(hi & 1)) return;
    if (hi - 1 < at(v).lo()) contradiction(v, "no even value below " + std::to_string(hi));
    log_.push_back({v, BoundSide::Upper, hi, hi - 1, Cause::parity()});
    rec_.values[v] = Interval(at(v).lo(), hi - 1);
  }

  void tighten_lo(int v, Value lo, const Cause& cause) {
    if (lo <= at(v).lo()) return;
    if (lo > at(v).hi()) {
      contradiction(v, "lower bound " + std::to_string(lo) + " exceeds upper");
    }
    log_.push_back({v, BoundSide::Lower, at(v).lo(), lo, cause});
    rec_.values[v] = Interval(lo, at(v).hi());
    round_lo(v);
    changed_ = true;
    touch(v);
  }

  void tighten_hi(int v, Value hi, const Cause& cause) {
    if (hi >= at(v).hi()) return;
    if (hi < at(v).lo()) {
      contradiction(v, "upper bound " + Interval::bound_to_string(hi) + " undercuts lower");
    }
    log_.push_back({v, BoundSide::Upper, at(v).hi(), hi, cause});
    rec_.values[v] = Interval(at(v).lo(), hi);
    round_hi(v);
    changed_ = true;
    touch(v);
  }

  void touch(int v) {
    if (queued_.empty()) return;  // sweep kernel runs without a queue
    for (int ei : g_.incident(v)) {
      if (!queued_[ei]) {
        queued_[ei] = 1;
        queue_.push_back(ei);
      }
    }
  }

  void apply_edge(const Edge& e) {
    tighten_lo(e.greater, at(e.lesser).lo(), Cause::edge(e.label));
    tighten_hi(e.lesser, at(e.greater).hi(), Cause::edge(e.label));
  }

  void parity_sweep() {
    for (std::size_t v = 0; v < g_.registry().size(); ++v) {
      round_lo(static_cast<int>(v));
      round_hi(static_cast<int>(v));
    }
  }

  void worklist(std::uint64_t seed) {
    std::vector<int> order(g_.edges().size());
    std::iota(order.begin(), order.end(), 0);
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      std::shuffle(order.begin(), order.end(), rng);
    }
    queued_.assign(g_.edges().size(), 1);
    queue_.assign(order.begin(), order.end());
    while (!queue_.empty()) {
      int ei = queue_.front();
      queue_.pop_front();
      queued_[ei] = 0;
      apply_edge(g_.edge(ei));
    }
    queued_.clear();
  }

  void sweep() {
    bool any = true;
    while (any) {
      any = false;
      for (const Edge& e : g_.edges()) {
        changed_ = false;
        apply_edge(e);
        if (changed_) any = true;
      }
    }
  }
};

struct KnotFailure {
  int record = -1;
  std::string message;
  std::string vertex;
};

PropagateSummary run_all(KnotDatabase& db, const InequalityGraph& g,
                         const PropagateOptions& opts, bool parallel) {
  if (!(db.registry() == g.registry())) {
    throw MismatchedDatabasesError("database and graph registries differ");
  }
  int n = static_cast<int>(db.size());
  std::vector<KnotFailure> failures(n);
  std::vector<std::size_t> appended(n, 0);

#ifdef _OPENMP
  int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#else
  int threads = 1;
  (void)parallel;
#endif

  auto body = [&](int i) {
    KnotRecord& rec = db.record(i);
    auto& log = db.events(i);
    std::size_t base = log.size();
    KnotRecord snapshot = rec;
    try {
      KnotEngine(rec, log, g).run(opts.kernel, opts.seed);
      appended[i] = log.size() - base;
    } catch (const ContradictionError& e) {
      rec = snapshot;
      log.resize(base);
      failures[i] = {i, e.message(), e.vertex_id()};
    }
  };

#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
#else
  for (int i = 0; i < n; ++i) body(i);
#endif

  PropagateSummary summary;
  summary.knots = db.size();
  for (int i = 0; i < n; ++i) {
    if (failures[i].record >= 0) {
      if (opts.strict) {
        throw ContradictionError(failures[i].message, db.record(i).id,
                                 failures[i].vertex);
      }
      ++summary.contradictions;
      summary.skipped.push_back(db.record(i).id);
    } else {
      summary.events += appended[i];
    }
  }
  return summary;
}

}  // namespace

PropagateSummary propagate(KnotDatabase& db, const InequalityGraph& g,
                           const PropagateOptions& opts) {
  return run_all(db, g, opts, true);
}

PropagateSummary propagate_serial(KnotDatabase& db, const InequalityGraph& g,
                                  const PropagateOptions& opts) {
  return run_all(db, g, opts, false);
}

bool is_fixed_point(const KnotDatabase& db, const InequalityGraph& g) {
  for (const auto& rec : db.records()) {
    for (std::size_t v = 0; v < g.registry().size(); ++v) {
      if (g.registry().def(static_cast<int>(v)).parity != Parity::Even) continue;
      const Interval& iv = rec.values[v];
      if (iv.lo() & 1) return false;
      if (iv.hi() != kUnbounded && (iv.hi() & 1)) return false;
    }
    for (const Edge& e : g.edges()) {
      if (rec.values[e.greater].lo() < rec.values[e.lesser].lo()) return false;
      if (rec.values[e.lesser].hi() > rec.values[e.greater].hi()) return false;
    }
  }
  return true;
}

std::string diff_category_to_string(DiffCategory c) {
  switch (c) {
    case DiffCategory::Unchanged:
      return "unchanged";
    case DiffCategory::NewExact:
      return "new_exact";
    case DiffCategory::TightenedBoth:
      return "tightened_both";
    case DiffCategory::TightenedLower:
      return "tightened_lower";
    case DiffCategory::TightenedUpper:
      return "tightened_upper";
  }
  return "unchanged";
}

DiffReport diff(const KnotDatabase& before, const KnotDatabase& after) {
  if (!(before.registry() == after.registry())) {
    throw MismatchedDatabasesError("registries differ");
  }
  if (before.size() != after.size()) {
    throw MismatchedDatabasesError("record counts differ");
  }
  DiffReport report;
  for (std::size_t r = 0; r < before.size(); ++r) {
    const KnotRecord& b = before.record(static_cast<int>(r));
    const KnotRecord& a = after.record(static_cast<int>(r));
    if (b.id != a.id) {
      throw MismatchedDatabasesError("record " + std::to_string(r) + ": '" + b.id +
                                     "' vs '" + a.id + "'");
    }
    for (std::size_t v = 0; v < b.values.size(); ++v) {
      const Interval& bv = b.values[v];
      const Interval& av = a.values[v];
      if (av == bv) {
        ++report.unchanged;
        continue;
      }
      if (av.lo() < bv.lo() || av.hi() > bv.hi()) {
        throw MismatchedDatabasesError("cell " + b.id + "/" +
                                       before.registry().def(static_cast<int>(v)).id +
                                       " loosened from " + bv.to_string() + " to " +
                                       av.to_string());
      }
      DiffRow row;
      row.knot = b.id;
      row.vertex = static_cast<int>(v);
      row.before = bv;
      row.after = av;
      if (!bv.exact() && av.exact()) {
        row.category = DiffCategory::NewExact;
        ++report.new_exact;
      } else if (av.lo() > bv.lo() && av.hi() < bv.hi()) {
        row.category = DiffCategory::TightenedBoth;
        ++report.tightened_both;
      } else if (av.lo() > bv.lo()) {
        row.category = DiffCategory::TightenedLower;
        ++report.tightened_lower;
      } else {
        row.category = DiffCategory::TightenedUpper;
        ++report.tightened_upper;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_diff_csv(std::ostream& out, const DiffReport& report, const Registry& registry) {
  write_csv_row(out, {"knot", "vertex", "before_lo", "before_hi", "after_lo",
                      "after_hi", "category"});
  for (const DiffRow& row : report.rows) {
    write_csv_row(out, {
        row.knot,
        registry.def(row.vertex).id,
        Interval::bound_to_string(row.before.lo()),
        Interval::bound_to_string(row.before.hi()),
        Interval::bound_to_string(row.after.lo()),
        Interval::bound_to_string(row.after.hi()),
        diff_category_to_string(row.category),
    });
  }
}

std::string diff_summary(const DiffReport& report, const Registry& registry) {
  std::string out = std::to_string(report.total_changes()) + " cells changed: " +
                    std::to_string(report.new_exact) + " new exact, " +
                    std::to_string(report.tightened_lower) + " tightened lower, " +
                    std::to_string(report.tightened_upper) + " tightened upper, " +
                    std::to_string(report.tightened_both) + " tightened both; " +
                    std::to_string(report.unchanged) + " unchanged\n";
  struct Tally {
    std::size_t ne = 0, tl = 0, tu = 0, tb = 0;
  };
  std::vector<Tally> per_vertex(registry.size());
  for (const DiffRow& row : report.rows) {
    Tally& t = per_vertex[row.vertex];
    switch (row.category) {
      case DiffCategory::NewExact: ++t.ne; break;
      case DiffCategory::TightenedLower: ++t.tl; break;
      case DiffCategory::TightenedUpper: ++t.tu; break;
      case DiffCategory::TightenedBoth: ++t.tb; break;
      case DiffCategory::Unchanged: break;
    }
  }
  for (std::size_t v = 0; v < per_vertex.size(); ++v) {
    const Tally& t = per_vertex[v];
    if (t.ne + t.tl + t.tu + t.tb == 0) continue;
    out += "  " + registry.def(static_cast<int>(v)).id + ":";
    bool first = true;
    auto item = [&](std::size_t n, const char* label) {
      if (!n) return;
      out += first ? " " : ", ";
      first = false;
      out += std::to_string(n);
      out += label;
    };
    item(t.ne, " new exact");
    item(t.tl, " tightened lower");
    item(t.tu, " tightened upper");
    item(t.tb, " tightened both");
    out += "\n";
  }
  return out;
}

}  // namespace knotineq
