#include "knotineq/mine.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "knotineq/csv.hpp"
#include "knotineq/error.hpp"
#include "knotineq/propagate.hpp"

namespace knotineq {

namespace {

// Pairs equal or comparable for every knot by published results, so scanning
// them would only restate the literature.
constexpr const char* kBundled[][2] = {
    {"2g", "degPz"},
    {"degPz", "2cl"},
    {"2gc", "2cl"},
    {"2gf", "2cl"},
    {"2br-2", "2cl"},
};

}  // namespace

std::string conjecture_status_to_string(ConjectureStatus s) {
  switch (s) {
    case ConjectureStatus::Rejected:
      return "rejected";
    case ConjectureStatus::Candidate:
      return "candidate";
    case ConjectureStatus::Conj:
      return "conj";
    case ConjectureStatus::Basic:
      return "basic";
  }
  return "candidate";
}

ExclusionList ExclusionList::bundled_default(const Registry& registry) {
  ExclusionList out;
  for (const auto& ids : kBundled) {
    int a = registry.find(ids[0]);
    int b = registry.find(ids[1]);
    if (a < 0 || b < 0) continue;  // registry without the bundled vertices
    out.pairs_.emplace_back(a, b);
  }
  return out;
}

ExclusionList ExclusionList::load(std::istream& in, const Registry& registry) {
  ExclusionList out;
  std::string raw, line;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!config_line(raw, line)) continue;
    auto fields = split_tab(line);
    if (fields.size() != 2) {
      throw ParseError("exclusion line " + std::to_string(lineno) +
                       ": expected two tab-separated vertex ids");
    }
    out.pairs_.emplace_back(registry.index_of(fields[0]), registry.index_of(fields[1]));
  }
  return out;
}

ExclusionList ExclusionList::load_file(const std::string& path, const Registry& registry) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open exclusion list '" + path + "'");
  return load(in, registry);
}

bool ExclusionList::excluded(int a, int b) const {
  for (const auto& [p, q] : pairs_) {
    if ((p == a && q == b) || (p == b && q == a)) return true;
  }
  return false;
}

std::vector<Conjecture> enumerate_conjectures(const KnotDatabase& db,
                                              const InequalityGraph& g,
                                              const ExclusionList& exclusions,
                                              const MineOptions& opts) {
  if (!(db.registry() == g.registry())) {
    throw MismatchedDatabasesError("database and graph registries differ");
  }
  if (!is_fixed_point(db, g)) {
    throw NotAFixedPointError("database admits further propagation; run propagate first");
  }
  Relation closure = transitive_closure(g);
  int n = static_cast<int>(g.registry().size());
  std::vector<std::pair<int, int>> scan;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y || closure.reaches(x, y) || exclusions.excluded(x, y)) continue;
      scan.emplace_back(x, y);
    }
  }

  int m = static_cast<int>(scan.size());
  std::vector<Conjecture> out(scan.size());
#ifdef _OPENMP
  int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (int i = 0; i < m; ++i) {
    const auto [x, y] = scan[i];
    Conjecture c;
    c.greater = x;
    c.lesser = y;
    for (const KnotRecord& rec : db.records()) {
      const Interval& ix = rec.values[x];
      const Interval& iy = rec.values[y];
      if (opts.exact_only && !(ix.exact() && iy.exact())) {
        ++c.tally.undetermined;
        continue;
      }
      if (ix.hi() < iy.lo()) {
        ++c.tally.violations;
        if (c.tally.first_violation.empty()) c.tally.first_violation = rec.id;
      } else if (ix.exact() && iy.exact() && ix.lo() == iy.lo()) {
        ++c.tally.equalities;
        if (c.tally.first_equality.empty()) c.tally.first_equality = rec.id;
      } else if (ix.lo() > iy.hi()) {
        ++c.tally.stricts;
        if (c.tally.first_strict.empty()) c.tally.first_strict = rec.id;
      } else {
        ++c.tally.undetermined;
      }
    }
    if (c.tally.violations > 0) {
      c.status = ConjectureStatus::Rejected;
      c.reason = c.tally.first_violation;
    } else if (c.tally.equalities > 0 && c.tally.stricts > 0) {
      c.status = ConjectureStatus::Conj;
    } else {
      c.status = ConjectureStatus::Candidate;
    }
    out[i] = std::move(c);
  }
  return out;
}

std::vector<Conjecture> basic_conjectures(std::vector<Conjecture> mined,
                                          const InequalityGraph& g) {
  std::vector<Conjecture> conjs;
  for (Conjecture& c : mined) {
    if (c.status == ConjectureStatus::Conj || c.status == ConjectureStatus::Basic) {
      c.status = ConjectureStatus::Conj;
      conjs.push_back(std::move(c));
    }
  }
  std::vector<std::pair<int, int>> extra;
  extra.reserve(conjs.size());
  for (const Conjecture& c : conjs) extra.emplace_back(c.greater, c.lesser);
  auto kept = transitive_reduction_modulo(transitive_closure(g), std::move(extra));
  for (Conjecture& c : conjs) {
    if (std::find(kept.begin(), kept.end(), std::make_pair(c.greater, c.lesser)) !=
        kept.end()) {
      c.status = ConjectureStatus::Basic;
    }
  }
  return conjs;
}

void write_conjecture_csv(std::ostream& out, const std::vector<Conjecture>& rows,
                          const Registry& registry) {
  write_csv_row(out, {"greater", "lesser", "status", "equality_witnesses",
                      "strict_witnesses", "undetermined", "sample_equality_knot",
                      "sample_strict_knot"});
  for (const Conjecture& c : rows) {
    write_csv_row(out, {
        registry.def(c.greater).id,
        registry.def(c.lesser).id,
        conjecture_status_to_string(c.status),
        std::to_string(c.tally.equalities),
        std::to_string(c.tally.stricts),
        std::to_string(c.tally.undetermined),
        c.tally.first_equality,
        c.tally.first_strict,
    });
  }
}

}  // namespace knotineq
