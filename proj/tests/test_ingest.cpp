#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "knotineq/error.hpp"
#include "knotineq/ingest.hpp"

using namespace knotineq;

namespace {

std::string repo(const std::string& rel) {
  return std::string(KNOTINEQ_REPO_ROOT) + "/" + rel;
}

// Four vertices exercising every ingest path: a plain count, a signed
// column folded through |.|, a doubled count, and a reference-only vertex
// that supplements may target.
InequalityGraph tiny_graph() {
  Registry reg;
  reg.add({"c", "c", "crossings", parse_transform("id"), Parity::Any, SourceClass::KnotInfo});
  reg.add({"s", "|s|", "signed thing", parse_transform("abs"), Parity::Any,
           SourceClass::KnotInfo});
  reg.add({"2g", "2g", "genus", parse_transform("2x"), Parity::Even, SourceClass::KnotInfo});
  reg.add({"ev", "ev", "even count", parse_transform("id"), Parity::Even,
           SourceClass::KnotInfo});
  reg.add({"x", "x", "extra", parse_transform("id"), Parity::Any, SourceClass::Reference});
  return InequalityGraph(std::move(reg), {});
}

ColumnMapping tiny_mapping() {
  std::istringstream in(
      "!knot\tName\n"
      "Crossings\tc\tcount\n"
      "Sig\ts\tsigned\n"
      "Genus\t2g\tcount\n"
      "Ev\tev\tcount\n");
  return load_mapping(in);
}

RawTable parse(const std::string& csv, const ColumnMapping& m, const Registry& r) {
  std::istringstream in(csv);
  return parse_knotinfo_csv(in, m, r);
}

}  // namespace

TEST_CASE("knot names normalize to the compact form") {
  CHECK(normalize_knot_name("3_1") == "3_1");
  CHECK(normalize_knot_name("13n_{128}") == "13n128");
  CHECK(normalize_knot_name("13a_{1}") == "13a1");
  CHECK(normalize_knot_name(" 10_139 ") == "10_139");
  CHECK(normalize_knot_name("12 n 1") == "12n1");
  CHECK(normalize_knot_name("") == "");
}

TEST_CASE("mapping loader checks its shape") {
  CHECK(tiny_mapping().bindings.size() == 4);
  CHECK(tiny_mapping().knot_column == "Name");
  CHECK(tiny_mapping().bindings[1].syntax == CellSyntax::Signed);

  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return load_mapping(in);
  };
  CHECK_THROWS_AS(load("Crossings\tc\tcount\n"), ParseError);               // no !knot
  CHECK_THROWS_AS(load("!knot\tName\n!knot\tAlso\n"), ParseError);          // two !knot
  CHECK_THROWS_AS(load("!knot\tName\nCrossings\tc\n"), ParseError);         // 2 fields
  CHECK_THROWS_AS(load("!knot\tName\nA\tc\tcount\nA\ts\tcount\n"), ParseError);
  CHECK_THROWS_AS(load("!knot\tName\nA\tc\tcount\nB\tc\tcount\n"), ParseError);
  CHECK_THROWS_AS(load("!knot\tName\nA\tc\tmaybe\n"), ParseError);          // bad syntax
}

TEST_CASE("knot table cells parse in all three shapes") {
  auto m = tiny_mapping();
  auto g = tiny_graph();
  RawTable t = parse(
      "Name,Crossings,Sig,Genus,Ev,Ignored\n"
      "3_1,3,-2,1,,junk\n"
      "4_1,\"[4,6]\",0,1..2,unknown,\n",
      m, g.registry());
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].knot == "3_1");
  REQUIRE(t.rows[0].cells.size() == 3);  // Ev blank
  CHECK(t.rows[0].cells[0].vertex == 0);
  CHECK(t.rows[0].cells[0].lo == 3);
  CHECK(t.rows[0].cells[0].hi == 3);
  CHECK(t.rows[0].cells[1].lo == -2);  // invariant units, sign kept
  CHECK(t.rows[0].cells[1].hi == -2);
  REQUIRE(t.rows[1].cells.size() == 3);  // Ev "unknown"
  CHECK(t.rows[1].cells[0].lo == 4);
  CHECK(t.rows[1].cells[0].hi == 6);
  CHECK(t.rows[1].cells[2].lo == 1);
  CHECK(t.rows[1].cells[2].hi == 2);
}

TEST_CASE("knot table rejects bad rows") {
  auto m = tiny_mapping();
  auto g = tiny_graph();
  CHECK_THROWS_AS(parse("Name,Crossings,Sig,Genus\n3_1,3,0,1\n", m, g.registry()),
                  UnknownColumnError);  // Ev column missing
  CHECK_THROWS_AS(parse("Knot,Crossings,Sig,Genus,Ev\n3_1,3,0,1,\n", m, g.registry()),
                  UnknownColumnError);  // knot column missing
  CHECK_THROWS_AS(
      parse("Name,Crossings,Sig,Genus,Ev\n3_1,3,0,1,\n3_1,3,0,1,\n", m, g.registry()),
      DuplicateKnotError);
  try {
    parse("Name,Crossings,Sig,Genus,Ev\n3_1,three,0,1,\n", m, g.registry());
    FAIL("malformed cell accepted");
  } catch (const MalformedCellError& e) {
    std::string what = e.what();
    CHECK(what.find("Crossings") != std::string::npos);
    CHECK(what.find("three") != std::string::npos);
    CHECK(what.find("row 2") != std::string::npos);
  }
  // counts cannot go negative, signed columns can
  CHECK_THROWS_AS(parse("Name,Crossings,Sig,Genus,Ev\n3_1,-3,0,1,\n", m, g.registry()),
                  MalformedCellError);
  CHECK_NOTHROW(parse("Name,Crossings,Sig,Genus,Ev\n3_1,3,-4,1,\n", m, g.registry()));
  // inverted range
  CHECK_THROWS_AS(parse("Name,Crossings,Sig,Genus,Ev\n3_1,\"[5,3]\",0,1,\n", m, g.registry()),
                  MalformedCellError);
  // empty knot cell
  CHECK_THROWS_AS(parse("Name,Crossings,Sig,Genus,Ev\n,3,0,1,\n", m, g.registry()),
                  MalformedCellError);
}

TEST_CASE("supplement rows parse and enforce the override rule") {
  auto g = tiny_graph();
  std::istringstream in(
      "knot,vertex,lo,hi\n"
      "3_1,x,2,2\n"
      "4_1,x,1,inf\n"
      "3_1,c,4,4,override\n");
  auto rows = load_supplement(in, g.registry());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].vertex == 4);
  CHECK(rows[0].value == Interval(2, 2));
  CHECK(!rows[0].replace);
  CHECK(rows[1].value.hi() == kUnbounded);
  CHECK(rows[2].replace);

  auto load = [&](const std::string& text) {
    std::istringstream s(text);
    return load_supplement(s, g.registry());
  };
  // plain rows may not shadow a KnotInfo column
  CHECK_THROWS_AS(load("3_1,c,4,4\n"), ParseError);
  CHECK_THROWS_AS(load("3_1,nope,4,4\n"), UnknownVertexError);
  CHECK_THROWS_AS(load("3_1,x,-1,4\n"), MalformedCellError);
  CHECK_THROWS_AS(load("3_1,x,4,2\n"), MalformedCellError);
  CHECK_THROWS_AS(load("3_1,x,4\n"), ParseError);
  CHECK_THROWS_AS(load("3_1,x,4,4,maybe\n"), ParseError);
}

TEST_CASE("build_database mets cells, applies transforms, logs ingest") {
  auto m = tiny_mapping();
  auto g = tiny_graph();
  RawTable t = parse(
      "Name,Crossings,Sig,Genus,Ev\n"
      "3_1,3,-2,1,\n",
      m, g.registry());
  KnotDatabase db = build_database(t, g);
  REQUIRE(db.size() == 1);
  const KnotRecord& rec = db.record(0);
  CHECK(rec.values[0] == Interval(3, 3));   // c
  CHECK(rec.values[1] == Interval(2, 2));   // |s| from -2
  CHECK(rec.values[2] == Interval(2, 2));   // 2g from 1
  CHECK(rec.values[3] == Interval(0, kUnbounded));  // Ev untouched
  // every logged event here is an ingest tightening
  CHECK(db.events(0).size() == 6);
  for (const auto& ev : db.events(0)) {
    CHECK(ev.cause.kind == Cause::Kind::Ingest);
  }
}

TEST_CASE("build_database parity pass rounds and logs") {
  auto m = tiny_mapping();
  auto g = tiny_graph();
  RawTable t = parse(
      "Name,Crossings,Sig,Genus,Ev\n"
      "5_2,,,,\"[1,5]\"\n",
      m, g.registry());
  KnotDatabase db = build_database(t, g);
  CHECK(db.record(0).values[3] == Interval(2, 4));
  int parity_events = 0;
  for (const auto& ev : db.events(0)) {
    if (ev.cause.kind == Cause::Kind::Parity) ++parity_events;
  }
  CHECK(parity_events == 2);

  RawTable bad = parse(
      "Name,Crossings,Sig,Genus,Ev\n"
      "5_2,,,,3\n",
      m, g.registry());
  try {
    build_database(bad, g);
    FAIL("odd exact value on an even vertex accepted");
  } catch (const ContradictionError& e) {
    std::string what = e.what();
    CHECK(what.find("[knot 5_2]") != std::string::npos);
    CHECK(what.find("[vertex ev]") != std::string::npos);
  }
}

TEST_CASE("supplements meet in, overrides replace, absent knots skip") {
  auto m = tiny_mapping();
  auto g = tiny_graph();
  RawTable t = parse(
      "Name,Crossings,Sig,Genus,Ev\n"
      "3_1,3,,,\n",
      m, g.registry());

  std::istringstream sup(
      "3_1,x,2,5\n"
      "3_1,x,0,3\n"
      "9_9,x,1,1\n"
      "3_1,c,4,6,override\n");
  auto rows = load_supplement(sup, g.registry());
  KnotDatabase db = build_database(t, g, rows);
  REQUIRE(db.size() == 1);
  CHECK(db.record(0).values[4] == Interval(2, 3));  // met: [2,5] with [0,3]
  CHECK(db.record(0).values[0] == Interval(4, 6));  // replaced, hi loosened

  std::istringstream clash(
      "3_1,x,2,2\n"
      "3_1,x,5,5\n");
  auto bad = load_supplement(clash, g.registry());
  try {
    build_database(t, g, bad);
    FAIL("disjoint supplement values accepted");
  } catch (const ContradictionError& e) {
    std::string what = e.what();
    CHECK(what.find("[knot 3_1]") != std::string::npos);
    CHECK(what.find("[vertex x]") != std::string::npos);
  }
}

TEST_CASE("bundled mapping ingests the bundled fixture") {
  InequalityGraph g = load_graph_file(repo("data/graph.tsv"));
  load_parity_table_file(repo("data/parity.tsv"), g);
  ColumnMapping m = load_mapping_file(repo("data/mapping.tsv"));
  std::ifstream csv(repo("data/fixtures/knotinfo_9.csv"));
  REQUIRE(csv.good());
  RawTable t = parse_knotinfo_csv(csv, m, g.registry());
  CHECK(t.rows.size() == 84);
  auto sup = load_supplement_file(repo("data/fixtures/supplement_9.csv"), g.registry());
  KnotDatabase db = build_database(t, g, sup);
  int trefoil = db.find("3_1");
  REQUIRE(trefoil >= 0);
  const Registry& reg = g.registry();
  CHECK(db.record(trefoil).values[reg.index_of("c")] == Interval(3, 3));
  CHECK(db.record(trefoil).values[reg.index_of("2g")] == Interval(2, 2));
  CHECK(db.record(trefoil).values[reg.index_of("abs-sigma")] == Interval(2, 2));
  CHECK(db.record(trefoil).values[reg.index_of("2a")] == Interval(2, 2));
  // interval-valued unknotting cells survive as intervals
  int u2 = reg.index_of("2u");
  CHECK(db.record(db.index_of("9_10")).values[u2] == Interval(4, 6));
  CHECK(db.record(db.index_of("9_35")).values[u2] == Interval(4, 6));
}
