#include "knotineq/database.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "knotineq/csv.hpp"
#include "knotineq/error.hpp"

namespace knotineq {

int KnotDatabase::add_record(const std::string& id) {
  if (index_.count(id)) throw DuplicateKnotError(id);
  int i = static_cast<int>(records_.size());
  index_.emplace(id, i);
  KnotRecord rec;
  rec.id = id;
  rec.values.assign(registry_.size(), Interval());
  records_.push_back(std::move(rec));
  events_.emplace_back();
  return i;
}

int KnotDatabase::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

int KnotDatabase::index_of(const std::string& id) const {
  int i = find(id);
  if (i < 0) throw UnknownKnotError(id);
  return i;
}

std::size_t KnotDatabase::total_events() const {
  std::size_t n = 0;
  for (const auto& log : events_) n += log.size();
  return n;
}

bool KnotDatabase::same_values(const KnotDatabase& other) const {
  if (records_.size() != other.records_.size()) return false;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i] != other.records_[i]) return false;
  }
  return true;
}

std::string cause_to_string(const Cause& c) {
  switch (c.kind) {
    case Cause::Kind::Edge:
      return "edge:" + std::to_string(c.edge_label);
    case Cause::Kind::Parity:
      return "parity";
    case Cause::Kind::Ingest:
      return "ingest";
  }
  return "ingest";
}

namespace {

std::string cell_to_string(const Interval& iv) {
  return Interval::bound_to_string(iv.lo()) + ":" + Interval::bound_to_string(iv.hi());
}

Value parse_bound(const std::string& text, std::size_t row, const std::string& column) {
  if (text == "inf") return kUnbounded;
  if (text.empty()) throw MalformedCellError(row, column, text);
  char* end = nullptr;
  long long v = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size()) throw MalformedCellError(row, column, text);
  if (v < 0 || v > kMaxMagnitude) throw MalformedCellError(row, column, text);
  return static_cast<Value>(v);
}

}  // namespace

void write_database_csv(const KnotDatabase& db, std::ostream& out) {
  std::vector<std::string> header;
  header.push_back("knot");
  for (const auto& def : db.registry().defs()) header.push_back(def.id);
  write_csv_row(out, header);
  for (const auto& rec : db.records()) {
    std::vector<std::string> row;
    row.push_back(rec.id);
    for (const auto& iv : rec.values) row.push_back(cell_to_string(iv));
    write_csv_row(out, row);
  }
}

KnotDatabase read_database_csv(std::istream& in, const Registry& registry) {
  auto rows = read_csv(in);
  if (rows.empty()) throw ParseError("empty database table");
  const auto& header = rows[0];
  if (header.empty() || header[0] != "knot") {
    throw ParseError("database table must start with a 'knot' column");
  }
  std::vector<int> column_vertex(header.size(), -1);
  std::vector<bool> seen(registry.size(), false);
  for (std::size_t c = 1; c < header.size(); ++c) {
    int v = registry.find(header[c]);
    if (v < 0) throw UnknownColumnError(header[c]);
    if (seen[v]) throw ParseError("duplicate column '" + header[c] + "'");
    seen[v] = true;
    column_vertex[c] = v;
  }
  for (std::size_t v = 0; v < registry.size(); ++v) {
    if (!seen[v]) {
      throw ParseError("database table missing column '" + registry.def(static_cast<int>(v)).id + "'");
    }
  }
  KnotDatabase db(registry);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw ParseError("row " + std::to_string(r + 1) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    int rec = db.add_record(row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      const std::string& cell = row[c];
      std::size_t colon = cell.find(':');
      if (colon == std::string::npos) throw MalformedCellError(r + 1, header[c], cell);
      Value lo = parse_bound(cell.substr(0, colon), r + 1, header[c]);
      Value hi = parse_bound(cell.substr(colon + 1), r + 1, header[c]);
      if (lo > hi) throw MalformedCellError(r + 1, header[c], cell);
      db.record(rec).values[column_vertex[c]] = Interval(lo, hi);
    }
  }
  return db;
}

void write_events_csv(const KnotDatabase& db, std::ostream& out) {
  write_csv_row(out, {"knot", "seq", "vertex", "side", "old", "new", "cause"});
  for (std::size_t r = 0; r < db.size(); ++r) {
    const auto& log = db.events(static_cast<int>(r));
    for (std::size_t s = 0; s < log.size(); ++s) {
      const auto& e = log[s];
      write_csv_row(out, {
          db.record(static_cast<int>(r)).id,
          std::to_string(s),
          db.registry().def(e.vertex).id,
          e.side == BoundSide::Lower ? "lo" : "hi",
          Interval::bound_to_string(e.old_value),
          Interval::bound_to_string(e.new_value),
          cause_to_string(e.cause),
      });
    }
  }
}

}  // namespace knotineq
