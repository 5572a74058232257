#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "knotineq/error.hpp"
#include "knotineq/ingest.hpp"
#include "knotineq/propagate.hpp"
#include "knotineq/report.hpp"
#include "oracles.hpp"

using namespace knotineq;

namespace {

std::string repo(const std::string& rel) {
  return std::string(KNOTINEQ_REPO_ROOT) + "/" + rel;
}

struct Fixture {
  InequalityGraph graph;
  KnotDatabase db;
};

Fixture propagated_fixture() {
  InequalityGraph g = load_graph_file(repo("data/graph.tsv"));
  load_parity_table_file(repo("data/parity.tsv"), g);
  ColumnMapping m = load_mapping_file(repo("data/mapping.tsv"));
  std::ifstream csv(repo("data/fixtures/knotinfo_9.csv"));
  RawTable t = parse_knotinfo_csv(csv, m, g.registry());
  auto sup = load_supplement_file(repo("data/fixtures/supplement_9.csv"), g.registry());
  KnotDatabase db = build_database(t, g, sup);
  propagate(db, g);
  return {std::move(g), std::move(db)};
}

}  // namespace

TEST_CASE("golden lists parse header then knots") {
  std::mt19937_64 rng(1);
  Registry reg = oracles::plain_registry(2, rng, 0.0);
  std::istringstream in(
      "# pinned values\n"
      "v1\t4\n"
      "3_1\n"
      "13n_{128}\n");
  GoldenList list = load_golden_list(in, "sample", reg);
  CHECK(list.name == "sample");
  CHECK(list.vertex == 1);
  CHECK(list.expected == 4);
  REQUIRE(list.knots.size() == 2);
  CHECK(list.knots[1] == "13n128");

  auto load = [&](const std::string& text) {
    std::istringstream s(text);
    return load_golden_list(s, "bad", reg);
  };
  CHECK_THROWS_AS(load("# only comments\n"), ParseError);
  CHECK_THROWS_AS(load("v1\n3_1\n"), ParseError);
  CHECK_THROWS_AS(load("v1\t-4\n3_1\n"), ParseError);
  CHECK_THROWS_AS(load("nope\t4\n3_1\n"), UnknownVertexError);
}

TEST_CASE("golden checks report misses by kind") {
  std::mt19937_64 rng(2);
  Registry reg = oracles::plain_registry(2, rng, 0.0);
  InequalityGraph g(Registry(reg), {});
  KnotDatabase db(reg);
  db.record(db.add_record("3_1")).values[1] = Interval(4, 4);
  db.record(db.add_record("4_1")).values[1] = Interval(2, 6);
  db.record(db.add_record("5_1")).values[1] = Interval(5, 5);

  GoldenList list;
  list.name = "pins";
  list.vertex = 1;
  list.expected = 4;
  list.knots = {"3_1", "4_1", "5_1", "9_9"};
  GoldenOutcome out = check_golden(db, list);
  CHECK(out.checked == 4);
  CHECK(out.passed == 1);
  CHECK(!out.ok());
  REQUIRE(out.failures.size() == 3);
  CHECK(out.failures[0].knot == "4_1");
  CHECK(out.failures[0].reason == "[2,6]");
  CHECK(out.failures[1].reason == "[5,5]");
  CHECK(out.failures[2].knot == "9_9");
  CHECK(out.failures[2].reason == "missing");

  CHECK(golden_report(out) ==
        "pins: 1/4\n"
        "  4_1: [2,6]\n"
        "  5_1: [5,5]\n"
        "  9_9: missing\n");
}

TEST_CASE("bundled golden lists load with the published shapes") {
  InequalityGraph g = load_graph_file(repo("data/graph.tsv"));
  load_parity_table_file(repo("data/parity.tsv"), g);
  const Registry& reg = g.registry();

  GoldenList u2 = load_golden_list_file(repo("data/golden/u2_list.txt"), reg);
  CHECK(u2.name == "u2_list");
  CHECK(u2.vertex == reg.index_of("2u"));
  CHECK(u2.expected == 4);
  CHECK(u2.knots.size() == 36);

  GoldenList g4 = load_golden_list_file(repo("data/golden/gds4_list.txt"), reg);
  CHECK(g4.vertex == reg.index_of("gds"));
  CHECK(g4.expected == 4);
  CHECK(g4.knots.size() == 88);

  GoldenList g6 = load_golden_list_file(repo("data/golden/gds6_list.txt"), reg);
  CHECK(g6.expected == 6);
  CHECK(g6.knots.size() == 15);

  // all three lists name 13-crossing knots, so against the bundled
  // 9-crossing fixture every entry is missing
  Fixture f = propagated_fixture();
  GoldenOutcome out = check_golden(f.db, u2);
  CHECK(out.checked == 36);
  CHECK(out.passed == 0);
  for (const auto& fail : out.failures) CHECK(fail.reason == "missing");
}

TEST_CASE("explain walks the provenance chain") {
  Fixture f = propagated_fixture();
  std::string text = explain(f.db, f.graph, "3_1", "tr");
  CHECK(text ==
        "tr of 3_1 = [2,2]\n"
        "  lo(tr) = 2 by edge 10 (Hetal11): tr >= 2u\n"
        "    lo(2u) = 2 by ingest\n"
        "  hi(tr) = 2 by parity from 3\n"
        "    hi(tr) = 3 by edge 26 (Han14): c >= tr\n"
        "      hi(c) = 3 by ingest\n");
}

TEST_CASE("explain truncates at the depth limit") {
  Fixture f = propagated_fixture();
  std::string text = explain(f.db, f.graph, "3_1", "tr", 1);
  CHECK(text ==
        "tr of 3_1 = [2,2]\n"
        "  lo(tr) = 2 by edge 10 (Hetal11): tr >= 2u\n"
        "    ...\n"
        "  hi(tr) = 2 by parity from 3\n"
        "    ...\n");
}

TEST_CASE("explain labels untouched bounds as initial") {
  std::mt19937_64 rng(3);
  Registry reg = oracles::plain_registry(2, rng, 0.0);
  InequalityGraph g(Registry(reg), {});
  KnotDatabase db(reg);
  db.add_record("k0");
  std::string text = explain(db, g, "k0", "v0");
  CHECK(text ==
        "v0 of k0 = [0,inf]\n"
        "  lo(v0) = 0 by initial bound\n"
        "  hi(v0) = inf by initial bound\n");
}

TEST_CASE("explain flags events from edges the graph lacks") {
  std::mt19937_64 rng(4);
  Registry reg = oracles::plain_registry(2, rng, 0.0);
  InequalityGraph with_edge(Registry(reg), {{1, 0, 1, "Syn1"}});
  KnotDatabase db(reg);
  int r = db.add_record("k0");
  db.record(r).values = {Interval(0, 9), Interval(4, 9)};
  propagate(db, with_edge);
  CHECK(db.record(r).values[0] == Interval(4, 9));

  InequalityGraph bare(Registry(reg), {});
  std::string text = explain(db, bare, "k0", "v0");
  CHECK(text.find("by edge 1 (not in this graph)") != std::string::npos);
}

TEST_CASE("explain rejects unknown names") {
  Fixture f = propagated_fixture();
  CHECK_THROWS_AS(explain(f.db, f.graph, "99_99", "tr"), UnknownKnotError);
  CHECK_THROWS_AS(explain(f.db, f.graph, "3_1", "zz"), UnknownVertexError);
}
