#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "knotineq/database.hpp"
#include "knotineq/graph.hpp"

namespace knotineq {

// How a raw CSV column's numeric text is read, before any vertex transform:
//   Count: nonnegative integers only (negatives are malformed).
//   Signed: negatives accepted; the vertex transform (an absolute-value
//     one for every such column) turns the sign into a magnitude later.
enum class CellSyntax { Count, Signed };

CellSyntax parse_cell_syntax(const std::string& text);
std::string cell_syntax_to_string(CellSyntax s);

// One source-column binding: CSV header -> registry vertex.
struct ColumnBinding {
  std::string header;
  std::string vertex;
  CellSyntax syntax = CellSyntax::Count;
};

// Header mapping document: one `!knot<TAB>Header` line naming the knot-name
// column, then `header<TAB>vertex<TAB>count|signed` lines.
struct ColumnMapping {
  std::string knot_column;
  std::vector<ColumnBinding> bindings;
};

ColumnMapping load_mapping(std::istream& in);
ColumnMapping load_mapping_file(const std::string& path);

// Canonical knot name: strips braces and whitespace, drops an underscore
// that directly follows a letter ("13n_{128}" -> "13n128", "3_1" stays
// "3_1").
std::string normalize_knot_name(const std::string& raw);

// One parsed cell, still in invariant units: a signature cell "-3" stays
// [-3,-3] here and only becomes the vertex value |sigma| = [3,3] in
// build_database.
struct RawCell {
  int vertex = -1;
  Value lo = 0;
  Value hi = 0;
};

struct RawRow {
  std::string knot;  // normalized
  std::vector<RawCell> cells;
};

struct RawTable {
  std::vector<RawRow> rows;
};

// Reads a knot-table CSV against the mapping. Unmapped columns are ignored;
// a mapped column absent from the header throws UnknownColumnError. Cells
// that are blank or say "unknown" stay absent. Accepted value syntax:
// integer `n`, range `[a,b]`, range `a..b`.
RawTable parse_knotinfo_csv(std::istream& in, const ColumnMapping& mapping,
                            const Registry& registry);

// Supplement rows patch single cells in vertex units (`knot,vertex,lo,hi`
// CSV, `hi` may be `inf`, optional fifth field `override`). A plain row may
// only target a vertex with no KnotInfo column (Reference or Unknown source
// class) and is met with whatever ingest produced; an `override` row may
// target anything and replaces the cell outright.
struct SupplementRow {
  std::string knot;  // normalized
  int vertex = -1;
  Interval value;
  bool replace = false;
};

std::vector<SupplementRow> load_supplement(std::istream& in, const Registry& registry);
std::vector<SupplementRow> load_supplement_file(const std::string& path,
                                                const Registry& registry);

// Builds the initial database: every vertex of every knot starts at
// [0, inf), raw cells pass through to_vertex and are met in, supplements
// are applied, then each vertex's parity rounds its endpoints inward.
// Cell and supplement tightenings are logged as Ingest events, the parity
// pass as Parity events. Conflicts throw ContradictionError naming the
// knot and vertex.
KnotDatabase build_database(const RawTable& table, const InequalityGraph& g,
                            const std::vector<SupplementRow>& supplements = {});

}  // namespace knotineq
