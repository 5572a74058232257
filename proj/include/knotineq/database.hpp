#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "knotineq/interval.hpp"
#include "knotineq/registry.hpp"

namespace knotineq {

enum class BoundSide { Lower, Upper };

// What justified a single bound change.
struct Cause {
  enum class Kind { Edge, Parity, Ingest };
  Kind kind = Kind::Ingest;
  int edge_label = 0;  // 1-based, set when kind == Edge

  static Cause edge(int label) { return {Kind::Edge, label}; }
  static Cause parity() { return {Kind::Parity, 0}; }
  static Cause ingest() { return {Kind::Ingest, 0}; }

  bool operator==(const Cause&) const = default;
};

// One strictly-tightening bound change on one vertex of one knot.
struct PropagationEvent {
  int vertex = 0;
  BoundSide side = BoundSide::Lower;
  Value old_value = 0;
  Value new_value = 0;
  Cause cause;

  bool operator==(const PropagationEvent&) const = default;
};

struct KnotRecord {
  std::string id;                // normalized name, e.g. "13n128"
  std::vector<Interval> values;  // indexed per registry order

  bool operator==(const KnotRecord&) const = default;
};

// Per-knot intervals for every registered vertex, plus an append-only
// provenance log of every tightening. Records keep ingest order; per-knot
// logs keep event order, which makes the flattened provenance deterministic
// regardless of how the propagation work was scheduled.
class KnotDatabase {
 public:
  KnotDatabase() = default;
  explicit KnotDatabase(Registry registry) : registry_(std::move(registry)) {}

  const Registry& registry() const { return registry_; }

  std::size_t size() const { return records_.size(); }
  const KnotRecord& record(int i) const { return records_[i]; }
  KnotRecord& record(int i) { return records_[i]; }
  const std::vector<KnotRecord>& records() const { return records_; }

  // Index of a knot id, or -1.
  int find(const std::string& knot_id) const;
  int index_of(const std::string& knot_id) const;  // throws UnknownKnotError

  // Appends a record initialized to [0, inf) everywhere.
  // Throws DuplicateKnotError on a repeated id.
  int add_record(const std::string& knot_id);

  const std::vector<PropagationEvent>& events(int record_index) const {
    return events_[record_index];
  }
  std::vector<PropagationEvent>& events(int record_index) {
    return events_[record_index];
  }
  std::size_t total_events() const;

  // Equality of contents (registry, records); provenance is not compared.
  bool same_values(const KnotDatabase& other) const;

 private:
  Registry registry_;
  std::vector<KnotRecord> records_;
  std::vector<std::vector<PropagationEvent>> events_;
  std::unordered_map<std::string, int> index_;
};

// Canonical database file: one row per knot, one column per vertex, cells
// rendered lo:hi with "inf" for the unbounded end ("4:4", "0:inf").
void write_database_csv(const KnotDatabase& db, std::ostream& out);
KnotDatabase read_database_csv(std::istream& in, const Registry& registry);

// Events file: knot,seq,vertex,side,old,new,cause.
void write_events_csv(const KnotDatabase& db, std::ostream& out);

std::string cause_to_string(const Cause& c);

}  // namespace knotineq
