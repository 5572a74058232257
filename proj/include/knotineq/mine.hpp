#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "knotineq/database.hpp"
#include "knotineq/graph.hpp"

namespace knotineq {

// Witness counts for an ordered vertex pair (x, y), read off intervals:
//   violation  hi(x) < lo(y)      x >= y certainly fails
//   equality   both exact, equal  x == y certainly
//   strict     lo(x) > hi(y)      x > y certainly
//   undetermined: none of the three could be certified for that knot.
// In exact-only mode only knots with both cells exact are scanned; the
// rest count as undetermined.
struct WitnessTally {
  std::size_t violations = 0;
  std::size_t equalities = 0;
  std::size_t stricts = 0;
  std::size_t undetermined = 0;
  std::string first_violation;
  std::string first_equality;
  std::string first_strict;
};

enum class ConjectureStatus {
  Rejected,   // at least one violation witness
  Candidate,  // no violation, but missing an equality or strict witness
  Conj,       // no violation, at least one equality and one strict witness
  Basic,      // Conj and not derivable from the graph plus the other Conjs
};

std::string conjecture_status_to_string(ConjectureStatus s);

struct Conjecture {
  int greater = -1;
  int lesser = -1;
  ConjectureStatus status = ConjectureStatus::Candidate;
  std::string reason;  // Rejected only: the witness knot
  WitnessTally tally;
};

// Unordered pairs never reported in either orientation.
class ExclusionList {
 public:
  static ExclusionList bundled_default(const Registry& registry);
  static ExclusionList load(std::istream& in, const Registry& registry);
  static ExclusionList load_file(const std::string& path, const Registry& registry);
  static ExclusionList none() { return ExclusionList(); }

  bool excluded(int a, int b) const;
  std::size_t size() const { return pairs_.size(); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<int, int>> pairs_;
};

struct MineOptions {
  bool exact_only = false;
  int jobs = 0;
};

// Scans every ordered vertex pair not implied by the graph's closure and
// not excluded, tallying witnesses over all knots. The database must be at
// a fixed point (NotAFixedPointError otherwise). Returns the scanned pairs
// in (greater, lesser) index order, each with status Rejected, Candidate,
// or Conj; callers keep the Conj rows.
std::vector<Conjecture> enumerate_conjectures(const KnotDatabase& db,
                                              const InequalityGraph& g,
                                              const ExclusionList& exclusions,
                                              const MineOptions& opts = {});

// Keeps the Conj rows of `mined` and upgrades to Basic the subset that
// survives transitive reduction modulo the graph's closure.
std::vector<Conjecture> basic_conjectures(std::vector<Conjecture> mined,
                                          const InequalityGraph& g);

// greater,lesser,status,equality_witnesses,strict_witnesses,undetermined,
// sample_equality_knot,sample_strict_knot rows, with a header row.
void write_conjecture_csv(std::ostream& out, const std::vector<Conjecture>& rows,
                          const Registry& registry);

}  // namespace knotineq
