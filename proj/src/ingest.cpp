#include "knotineq/ingest.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "knotineq/csv.hpp"
#include "knotineq/error.hpp"

namespace knotineq {

CellSyntax parse_cell_syntax(const std::string& text) {
  if (text == "count") return CellSyntax::Count;
  if (text == "signed") return CellSyntax::Signed;
  throw ParseError("unknown cell syntax '" + text + "'");
}

std::string cell_syntax_to_string(CellSyntax s) {
  return s == CellSyntax::Signed ? "signed" : "count";
}

ColumnMapping load_mapping(std::istream& in) {
  ColumnMapping mapping;
  std::set<std::string> headers, vertices;
  std::string raw, line;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!config_line(raw, line)) continue;
    auto fields = split_tab(line);
    if (fields[0] == "!knot") {
      if (fields.size() != 2) {
        throw ParseError("mapping line " + std::to_string(lineno) + ": !knot needs a header name");
      }
      if (!mapping.knot_column.empty()) {
        throw ParseError("mapping declares two knot columns");
      }
      mapping.knot_column = fields[1];
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError("mapping line " + std::to_string(lineno) + " needs 3 fields");
    }
    if (!headers.insert(fields[0]).second) {
      throw ParseError("header '" + fields[0] + "' mapped twice");
    }
    if (!vertices.insert(fields[1]).second) {
      throw ParseError("vertex '" + fields[1] + "' mapped twice");
    }
    mapping.bindings.push_back({fields[0], fields[1], parse_cell_syntax(fields[2])});
  }
  if (mapping.knot_column.empty()) {
    throw ParseError("mapping lacks a !knot line");
  }
  return mapping;
}

ColumnMapping load_mapping_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_mapping(in);
}

std::string normalize_knot_name(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    if (c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '_' && !out.empty() &&
        std::isalpha(static_cast<unsigned char>(out.back()))) {
      continue;
    }
    out.push_back(c);
  }
  return out;
}

namespace {

bool parse_integer(const std::string& text, Value& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  long long v = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size()) return false;
  if (v > kMaxMagnitude || v < -kMaxMagnitude) return false;
  out = static_cast<Value>(v);
  return true;
}

// integer, [a,b], or a..b; returns false on shapes that should stay absent.
bool parse_value_cell(const std::string& text, CellSyntax syntax, Value& lo, Value& hi) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']') {
    std::string inner = t.substr(1, t.size() - 2);
    std::size_t comma = inner.find(',');
    if (comma == std::string::npos) return false;
    if (!parse_integer(trim(inner.substr(0, comma)), lo)) return false;
    if (!parse_integer(trim(inner.substr(comma + 1)), hi)) return false;
  } else if (t.find("..") != std::string::npos) {
    std::size_t dots = t.find("..");
    if (!parse_integer(trim(t.substr(0, dots)), lo)) return false;
    if (!parse_integer(trim(t.substr(dots + 2)), hi)) return false;
  } else {
    if (!parse_integer(t, lo)) return false;
    hi = lo;
  }
  if (lo > hi) return false;
  if (syntax == CellSyntax::Count && lo < 0) return false;
  return true;
}

}  // namespace

RawTable parse_knotinfo_csv(std::istream& in, const ColumnMapping& mapping,
                            const Registry& registry) {
  auto rows = read_csv(in);
  if (rows.empty()) throw ParseError("empty knot table");
  const auto& header = rows[0];

  int knot_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (trim(header[c]) == mapping.knot_column) knot_col = static_cast<int>(c);
  }
  if (knot_col < 0) throw UnknownColumnError(mapping.knot_column);

  struct Bound {
    int column;
    int vertex;
    CellSyntax syntax;
  };
  std::vector<Bound> bound;
  for (const auto& b : mapping.bindings) {
    int col = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (trim(header[c]) == b.header) col = static_cast<int>(c);
    }
    if (col < 0) throw UnknownColumnError(b.header);
    bound.push_back({col, registry.index_of(b.vertex), b.syntax});
  }

  RawTable table;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    RawRow out;
    if (knot_col >= static_cast<int>(row.size())) {
      throw MalformedCellError(r + 1, mapping.knot_column, "");
    }
    out.knot = normalize_knot_name(row[knot_col]);
    if (out.knot.empty()) {
      throw MalformedCellError(r + 1, mapping.knot_column, row[knot_col]);
    }
    if (!seen.insert(out.knot).second) {
      throw DuplicateKnotError(out.knot);
    }
    for (const auto& b : bound) {
      if (b.column >= static_cast<int>(row.size())) continue;
      std::string text = trim(row[b.column]);
      if (text.empty() || text == "unknown") continue;
      RawCell cell;
      cell.vertex = b.vertex;
      if (!parse_value_cell(text, b.syntax, cell.lo, cell.hi)) {
        throw MalformedCellError(r + 1, header[b.column], text);
      }
      out.cells.push_back(cell);
    }
    table.rows.push_back(std::move(out));
  }
  return table;
}

std::vector<SupplementRow> load_supplement(std::istream& in, const Registry& registry) {
  auto rows = read_csv(in);
  std::vector<SupplementRow> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && row.size() >= 2 && trim(row[0]) == "knot" && trim(row[1]) == "vertex") {
      continue;
    }
    if (row.size() != 4 && row.size() != 5) {
      throw ParseError("supplement row " + std::to_string(r + 1) + " needs 4 or 5 fields");
    }
    SupplementRow srow;
    srow.knot = normalize_knot_name(row[0]);
    srow.vertex = registry.index_of(trim(row[1]));
    Value lo, hi;
    std::string lo_text = trim(row[2]);
    std::string hi_text = trim(row[3]);
    if (!parse_integer(lo_text, lo) || lo < 0) {
      throw MalformedCellError(r + 1, "lo", lo_text);
    }
    if (hi_text == "inf") {
      hi = kUnbounded;
    } else if (!parse_integer(hi_text, hi) || hi < lo) {
      throw MalformedCellError(r + 1, "hi", hi_text);
    }
    srow.value = Interval(lo, hi);
    if (row.size() == 5) {
      std::string flag = trim(row[4]);
      if (flag == "override") {
        srow.replace = true;
      } else if (!flag.empty()) {
        throw ParseError("supplement row " + std::to_string(r + 1) +
                         ": unknown flag '" + flag + "'");
      }
    }
    if (!srow.replace &&
        registry.def(srow.vertex).source_class == SourceClass::KnotInfo) {
      throw ParseError("supplement row " + std::to_string(r + 1) + ": vertex '" +
                       registry.def(srow.vertex).id +
                       "' has a KnotInfo column; mark the row 'override'");
    }
    out.push_back(std::move(srow));
  }
  return out;
}

std::vector<SupplementRow> load_supplement_file(const std::string& path,
                                                const Registry& registry) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_supplement(in, registry);
}

namespace {

// Installs `next` into the record cell, logging one Ingest event per bound
// that tightened. Loosening (overrides only) is applied without an event.
void install(KnotDatabase& db, int rec, int vertex, const Interval& next) {
  Interval& cell = db.record(rec).values[vertex];
  if (cell == next) return;
  auto& log = db.events(rec);
  if (next.lo() > cell.lo()) {
    log.push_back({vertex, BoundSide::Lower, cell.lo(), next.lo(), Cause::ingest()});
  }
  if (next.hi() < cell.hi()) {
    log.push_back({vertex, BoundSide::Upper, cell.hi(), next.hi(), Cause::ingest()});
  }
  cell = next;
}

}  // namespace

KnotDatabase build_database(const RawTable& table, const InequalityGraph& g,
                            const std::vector<SupplementRow>& supplements) {
  const Registry& registry = g.registry();
  KnotDatabase db(registry);
  for (const auto& row : table.rows) {
    int rec = db.add_record(row.knot);
    for (const auto& cell : row.cells) {
      const VertexDef& def = registry.def(cell.vertex);
      Interval value = to_vertex(cell.lo, cell.hi, def.transform);
      try {
        install(db, rec, cell.vertex, meet(db.record(rec).values[cell.vertex], value));
      } catch (const ContradictionError& e) {
        throw ContradictionError(e.message(), row.knot, def.id);
      }
    }
  }
  for (const auto& srow : supplements) {
    int rec = db.find(srow.knot);
    if (rec < 0) continue;  // supplement may cover knots outside this table
    const VertexDef& def = registry.def(srow.vertex);
    if (srow.replace) {
      install(db, rec, srow.vertex, srow.value);
      continue;
    }
    try {
      install(db, rec, srow.vertex, meet(db.record(rec).values[srow.vertex], srow.value));
    } catch (const ContradictionError& e) {
      throw ContradictionError(e.message(), srow.knot, def.id);
    }
  }
  for (std::size_t r = 0; r < db.size(); ++r) {
    KnotRecord& rec = db.record(static_cast<int>(r));
    for (std::size_t v = 0; v < registry.size(); ++v) {
      const VertexDef& def = registry.def(static_cast<int>(v));
      Interval rounded;
      try {
        rounded = apply_parity(rec.values[v], def.parity);
      } catch (const ContradictionError& e) {
        throw ContradictionError(e.message(), rec.id, def.id);
      }
      if (rounded == rec.values[v]) continue;
      auto& log = db.events(static_cast<int>(r));
      if (rounded.lo() > rec.values[v].lo()) {
        log.push_back({static_cast<int>(v), BoundSide::Lower, rec.values[v].lo(),
                       rounded.lo(), Cause::parity()});
      }
      if (rounded.hi() < rec.values[v].hi()) {
        log.push_back({static_cast<int>(v), BoundSide::Upper, rec.values[v].hi(),
                       rounded.hi(), Cause::parity()});
      }
      rec.values[v] = rounded;
    }
  }
  return db;
}

}  // namespace knotineq
