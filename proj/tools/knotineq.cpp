#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "knotineq/csv.hpp"
#include "knotineq/database.hpp"
#include "knotineq/error.hpp"
#include "knotineq/graph.hpp"
#include "knotineq/ingest.hpp"
#include "knotineq/mine.hpp"
#include "knotineq/propagate.hpp"
#include "knotineq/report.hpp"

namespace {

using namespace knotineq;

// Relative paths fall back to $KNOTINEQ_DATA_DIR when they do not exist
// from the working directory.
std::string resolve(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  const char* base = std::getenv("KNOTINEQ_DATA_DIR");
  if (base && *base) {
    fs::path alt = fs::path(base) / path;
    if (fs::exists(alt)) return alt.string();
  }
  return path;
}

InequalityGraph load_graph_and_parity(const std::string& graph_path,
                                      const std::string& parity_path) {
  InequalityGraph g = load_graph_file(resolve(graph_path));
  load_parity_table_file(resolve(parity_path), g);
  return g;
}

KnotDatabase read_db(const std::string& path, const Registry& registry) {
  std::ifstream in(resolve(path));
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_database_csv(in, registry);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  return out;
}

struct ImportResult {
  InequalityGraph graph;
  KnotDatabase db;
};

ImportResult import_database(const std::string& graph_path, const std::string& parity_path,
                             const std::string& mapping_path, const std::string& csv_path,
                             const std::vector<std::string>& supplement_paths) {
  InequalityGraph g = load_graph_and_parity(graph_path, parity_path);
  ColumnMapping mapping = load_mapping_file(resolve(mapping_path));
  std::ifstream csv(resolve(csv_path));
  if (!csv) throw ParseError("cannot open '" + csv_path + "'");
  RawTable table = parse_knotinfo_csv(csv, mapping, g.registry());
  std::vector<SupplementRow> supplements;
  for (const std::string& path : supplement_paths) {
    auto rows = load_supplement_file(resolve(path), g.registry());
    supplements.insert(supplements.end(), rows.begin(), rows.end());
  }
  KnotDatabase db = build_database(table, g, supplements);
  return {std::move(g), std::move(db)};
}

struct CommonPaths {
  std::string graph = "data/graph.tsv";
  std::string parity = "data/parity.tsv";
  std::string mapping = "data/mapping.tsv";
};

void add_graph_options(CLI::App* cmd, CommonPaths& paths) {
  cmd->add_option("--graph", paths.graph, "graph description file");
  cmd->add_option("--parity", paths.parity, "parity table");
}

int run(CLI::App& app, int argc, char** argv) {
  CommonPaths paths;

  auto* import_cmd = app.add_subcommand("import", "build a database from a knot table");
  std::string import_csv, import_out = "db.csv";
  std::vector<std::string> import_supplements;
  add_graph_options(import_cmd, paths);
  import_cmd->add_option("--mapping", paths.mapping, "column mapping");
  import_cmd->add_option("--csv", import_csv, "knot table CSV")->required();
  import_cmd->add_option("--supplement", import_supplements,
                         "supplement CSV (repeatable)");
  import_cmd->add_option("--out", import_out, "output database CSV");

  auto* prop_cmd = app.add_subcommand("propagate", "tighten a database to its fixed point");
  std::string prop_db, prop_out = "newdb.csv", prop_events, prop_kernel = "worklist";
  bool prop_strict = false, prop_serial = false;
  int prop_jobs = 0;
  std::uint64_t prop_seed = 0;
  add_graph_options(prop_cmd, paths);
  prop_cmd->add_option("--db", prop_db, "input database CSV")->required();
  prop_cmd->add_option("--out", prop_out, "output database CSV");
  prop_cmd->add_option("--events", prop_events, "write this run's events CSV");
  prop_cmd->add_flag("--strict", prop_strict, "fail on the first contradictory knot");
  prop_cmd->add_option("--jobs", prop_jobs, "worker threads (0 = all)");
  prop_cmd->add_option("--seed", prop_seed, "shuffle worklist order (0 = natural)");
  prop_cmd->add_option("--kernel", prop_kernel, "worklist|sweep")
      ->check(CLI::IsMember({"worklist", "sweep"}));
  prop_cmd->add_flag("--serial", prop_serial, "use the serial reference engine");

  auto* diff_cmd = app.add_subcommand("diff", "compare two databases cell by cell");
  std::string diff_before, diff_after, diff_out;
  add_graph_options(diff_cmd, paths);
  diff_cmd->add_option("--before", diff_before, "baseline database CSV")->required();
  diff_cmd->add_option("--after", diff_after, "updated database CSV")->required();
  diff_cmd->add_option("--out", diff_out, "write changed cells CSV");

  auto* mine_cmd = app.add_subcommand("mine", "scan vertex pairs for conjectural inequalities");
  std::string mine_db, mine_out, mine_exclusions;
  bool mine_exact = false, mine_all = false, mine_no_exclusions = false;
  int mine_jobs = 0;
  add_graph_options(mine_cmd, paths);
  mine_cmd->add_option("--db", mine_db, "fixed-point database CSV")->required();
  mine_cmd->add_option("--out", mine_out, "write conjecture CSV");
  mine_cmd->add_flag("--exact-only", mine_exact, "witness only on exact cells");
  mine_cmd->add_option("--exclusions", mine_exclusions, "exclusion list file");
  mine_cmd->add_flag("--no-exclusions", mine_no_exclusions, "scan excluded pairs too");
  mine_cmd->add_flag("--all", mine_all, "report rejected and candidate pairs too");
  mine_cmd->add_option("--jobs", mine_jobs, "worker threads (0 = all)");

  auto* explain_cmd = app.add_subcommand("explain", "trace how a cell's bounds were derived");
  std::string explain_csv, explain_knot, explain_vertex;
  std::vector<std::string> explain_supplements;
  int explain_depth = 20;
  add_graph_options(explain_cmd, paths);
  explain_cmd->add_option("--mapping", paths.mapping, "column mapping");
  explain_cmd->add_option("--csv", explain_csv, "knot table CSV")->required();
  explain_cmd->add_option("--supplement", explain_supplements,
                          "supplement CSV (repeatable)");
  explain_cmd->add_option("--knot", explain_knot, "knot name")->required();
  explain_cmd->add_option("--vertex", explain_vertex, "vertex id")->required();
  explain_cmd->add_option("--max-depth", explain_depth, "trace depth limit");

  auto* golden_cmd = app.add_subcommand("check-golden", "verify pinned exact values");
  std::string golden_db;
  std::vector<std::string> golden_lists;
  add_graph_options(golden_cmd, paths);
  golden_cmd->add_option("--db", golden_db, "database CSV")->required();
  golden_cmd->add_option("--list", golden_lists, "golden list file (repeatable)")
      ->required();

  auto* dot_cmd = app.add_subcommand("export-dot", "render the graph in DOT format");
  std::string dot_out;
  add_graph_options(dot_cmd, paths);
  dot_cmd->add_option("--out", dot_out, "output file (default stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "check graph, parity, and mapping files");
  add_graph_options(validate_cmd, paths);
  validate_cmd->add_option("--mapping", paths.mapping, "column mapping");

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(import_cmd)) {
    ImportResult imported = import_database(paths.graph, paths.parity, paths.mapping,
                                            import_csv, import_supplements);
    auto out = open_out(import_out);
    write_database_csv(imported.db, out);
    std::cout << "imported " << imported.db.size() << " knots, "
              << imported.db.total_events() << " ingest events -> " << import_out
              << "\n";
  } else if (app.got_subcommand(prop_cmd)) {
    InequalityGraph g = load_graph_and_parity(paths.graph, paths.parity);
    KnotDatabase db = read_db(prop_db, g.registry());
    PropagateOptions opts;
    opts.strict = prop_strict;
    opts.jobs = prop_jobs;
    opts.seed = prop_seed;
    opts.kernel = prop_kernel == "sweep" ? Kernel::Sweep : Kernel::Worklist;
    PropagateSummary summary =
        prop_serial ? propagate_serial(db, g, opts) : propagate(db, g, opts);
    auto out = open_out(prop_out);
    write_database_csv(db, out);
    std::cout << "propagated " << summary.knots << " knots: " << summary.events
              << " events, " << summary.contradictions << " contradictions -> "
              << prop_out << "\n";
    for (const std::string& id : summary.skipped) {
      std::cout << "  skipped " << id << "\n";
    }
    if (!prop_events.empty()) {
      auto ev = open_out(prop_events);
      write_events_csv(db, ev);
    }
  } else if (app.got_subcommand(diff_cmd)) {
    InequalityGraph g = load_graph_and_parity(paths.graph, paths.parity);
    KnotDatabase before = read_db(diff_before, g.registry());
    KnotDatabase after = read_db(diff_after, g.registry());
    DiffReport report = diff(before, after);
    if (!diff_out.empty()) {
      auto out = open_out(diff_out);
      write_diff_csv(out, report, g.registry());
    }
    std::cout << diff_summary(report, g.registry());
  } else if (app.got_subcommand(mine_cmd)) {
    InequalityGraph g = load_graph_and_parity(paths.graph, paths.parity);
    KnotDatabase db = read_db(mine_db, g.registry());
    ExclusionList exclusions =
        mine_no_exclusions ? ExclusionList::none()
        : mine_exclusions.empty()
            ? ExclusionList::bundled_default(g.registry())
            : ExclusionList::load_file(resolve(mine_exclusions), g.registry());
    MineOptions opts;
    opts.exact_only = mine_exact;
    opts.jobs = mine_jobs;
    std::vector<Conjecture> mined = enumerate_conjectures(db, g, exclusions, opts);
    std::vector<Conjecture> basics = basic_conjectures(mined, g);
    std::size_t rejected = 0, candidates = 0, basic_count = 0;
    for (const Conjecture& c : mined) {
      if (c.status == ConjectureStatus::Rejected) ++rejected;
      if (c.status == ConjectureStatus::Candidate) ++candidates;
    }
    for (const Conjecture& c : basics) {
      if (c.status == ConjectureStatus::Basic) ++basic_count;
    }
    const std::vector<Conjecture>* output = &basics;
    std::vector<Conjecture> merged;
    if (mine_all) {
      merged = mined;
      for (Conjecture& c : merged) {
        for (const Conjecture& b : basics) {
          if (b.greater == c.greater && b.lesser == c.lesser) c.status = b.status;
        }
      }
      output = &merged;
    }
    if (!mine_out.empty()) {
      auto out = open_out(mine_out);
      write_conjecture_csv(out, *output, g.registry());
    } else {
      write_conjecture_csv(std::cout, *output, g.registry());
    }
    std::cout << "scanned " << mined.size() << " pairs: " << rejected
              << " rejected, " << candidates << " candidates, " << basics.size()
              << " conjectures (" << basic_count << " basic)\n";
  } else if (app.got_subcommand(explain_cmd)) {
    ImportResult imported = import_database(paths.graph, paths.parity, paths.mapping,
                                            explain_csv, explain_supplements);
    propagate(imported.db, imported.graph);
    std::cout << explain(imported.db, imported.graph, explain_knot, explain_vertex,
                         explain_depth);
  } else if (app.got_subcommand(golden_cmd)) {
    InequalityGraph g = load_graph_and_parity(paths.graph, paths.parity);
    KnotDatabase db = read_db(golden_db, g.registry());
    bool all_ok = true;
    for (const std::string& path : golden_lists) {
      GoldenList list = load_golden_list_file(resolve(path), g.registry());
      GoldenOutcome outcome = check_golden(db, list);
      std::cout << golden_report(outcome);
      if (!outcome.ok()) all_ok = false;
    }
    if (!all_ok) return 1;
  } else if (app.got_subcommand(dot_cmd)) {
    InequalityGraph g = load_graph_and_parity(paths.graph, paths.parity);
    if (dot_out.empty()) {
      std::cout << export_dot(g);
    } else {
      auto out = open_out(dot_out);
      out << export_dot(g);
    }
  } else if (app.got_subcommand(validate_cmd)) {
    InequalityGraph g = load_graph_and_parity(paths.graph, paths.parity);
    ColumnMapping mapping = load_mapping_file(resolve(paths.mapping));
    std::cout << g.registry().size() << " vertices, " << g.edges().size()
              << " edges, " << g.registry().size() << " parity entries\n";
    std::vector<bool> mapped(g.registry().size(), false);
    bool ok = true;
    for (const ColumnBinding& binding : mapping.bindings) {
      int v = g.registry().find(binding.vertex);
      if (v < 0) {
        std::cout << "mapping names unknown vertex '" << binding.vertex << "'\n";
        ok = false;
        continue;
      }
      mapped[v] = true;
      if (g.registry().def(v).source_class != SourceClass::KnotInfo) {
        std::cout << "mapping binds non-knotinfo vertex '" << binding.vertex << "'\n";
        ok = false;
      }
    }
    std::size_t knotinfo_count = 0;
    for (std::size_t v = 0; v < g.registry().size(); ++v) {
      const VertexDef& def = g.registry().def(static_cast<int>(v));
      if (def.source_class != SourceClass::KnotInfo) continue;
      ++knotinfo_count;
      if (!mapped[v]) {
        std::cout << "knotinfo vertex '" << def.id << "' has no mapped column\n";
        ok = false;
      }
    }
    std::cout << mapping.bindings.size() << " mapped columns for "
              << knotinfo_count << " knotinfo vertices\n";
    if (!ok) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interval propagation over a knot invariant inequality graph"};
  try {
    return run(app, argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
