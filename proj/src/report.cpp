#include "knotineq/report.hpp"

#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "knotineq/csv.hpp"
#include "knotineq/error.hpp"
#include "knotineq/ingest.hpp"

namespace knotineq {

namespace {

Value parse_expected(const std::string& text, const std::string& where) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(where + ": expected a non-negative integer, got '" + text + "'");
  }
  return std::stoll(text);
}

}  // namespace

GoldenList load_golden_list(std::istream& in, const std::string& name,
                            const Registry& registry) {
  GoldenList list;
  list.name = name;
  std::string raw, line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!config_line(raw, line)) continue;
    if (!have_header) {
      auto fields = split_tab(line);
      if (fields.size() != 2) {
        throw ParseError(name + " line " + std::to_string(lineno) +
                         ": expected vertex<TAB>value header");
      }
      list.vertex = registry.index_of(fields[0]);
      list.expected = parse_expected(fields[1], name + " line " + std::to_string(lineno));
      have_header = true;
      continue;
    }
    list.knots.push_back(normalize_knot_name(line));
  }
  if (!have_header) throw ParseError(name + ": missing vertex/value header");
  return list;
}

GoldenList load_golden_list_file(const std::string& path, const Registry& registry) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string name = path;
  std::size_t slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  std::size_t dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return load_golden_list(in, name, registry);
}

GoldenOutcome check_golden(const KnotDatabase& db, const GoldenList& list) {
  GoldenOutcome out;
  out.name = list.name;
  for (const std::string& knot : list.knots) {
    ++out.checked;
    int r = db.find(knot);
    if (r < 0) {
      out.failures.push_back({knot, "missing"});
      continue;
    }
    const Interval& iv = db.record(r).values[list.vertex];
    if (iv.exact() && iv.lo() == list.expected) {
      ++out.passed;
    } else {
      out.failures.push_back({knot, iv.to_string()});
    }
  }
  return out;
}

std::string golden_report(const GoldenOutcome& outcome) {
  std::string out = outcome.name + ": " + std::to_string(outcome.passed) + "/" +
                    std::to_string(outcome.checked) + "\n";
  for (const GoldenFailure& f : outcome.failures) {
    out += "  " + f.knot + ": " + f.reason + "\n";
  }
  return out;
}

namespace {

const char* bound_name(BoundSide s) { return s == BoundSide::Lower ? "lo" : "hi"; }

int last_event_before(const std::vector<PropagationEvent>& log, int vertex,
                      BoundSide side, long before) {
  for (long i = before - 1; i >= 0; --i) {
    if (log[static_cast<std::size_t>(i)].vertex == vertex &&
        log[static_cast<std::size_t>(i)].side == side) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

void trace(std::string& out, const KnotDatabase& db, const InequalityGraph& g,
           int record, int vertex, BoundSide side, long before, int depth,
           int max_depth) {
  std::string indent(2 * static_cast<std::size_t>(depth), ' ');
  if (depth > max_depth) {
    out += indent + "...\n";
    return;
  }
  const Registry& reg = db.registry();
  const auto& log = db.events(record);
  int k = last_event_before(log, vertex, side, before);
  if (k < 0) {
    Value value = side == BoundSide::Lower ? Value{0} : kUnbounded;
    out += indent + bound_name(side) + "(" + reg.def(vertex).id + ") = " +
           Interval::bound_to_string(value) + " by initial bound\n";
    return;
  }
  const PropagationEvent& ev = log[static_cast<std::size_t>(k)];
  std::string head = indent + bound_name(side) + "(" + reg.def(vertex).id + ") = " +
                     Interval::bound_to_string(ev.new_value);
  switch (ev.cause.kind) {
    case Cause::Kind::Ingest:
      out += head + " by ingest\n";
      return;
    case Cause::Kind::Parity:
      out += head + " by parity from " + Interval::bound_to_string(ev.old_value) + "\n";
      trace(out, db, g, record, vertex, side, k, depth + 1, max_depth);
      return;
    case Cause::Kind::Edge: {
      int ei = g.edge_by_label(ev.cause.edge_label);
      if (ei < 0) {
        out += head + " by edge " + std::to_string(ev.cause.edge_label) +
               " (not in this graph)\n";
        return;
      }
      const Edge& e = g.edge(ei);
      out += head + " by edge " + std::to_string(e.label) + " (" + e.citation +
             "): " + reg.def(e.greater).id + " >= " + reg.def(e.lesser).id + "\n";
      if (side == BoundSide::Lower) {
        trace(out, db, g, record, e.lesser, BoundSide::Lower, k, depth + 1, max_depth);
      } else {
        trace(out, db, g, record, e.greater, BoundSide::Upper, k, depth + 1, max_depth);
      }
      return;
    }
  }
}

}  // namespace

std::string explain(const KnotDatabase& db, const InequalityGraph& g,
                    const std::string& knot, const std::string& vertex,
                    int max_depth) {
  if (!(db.registry() == g.registry())) {
    throw MismatchedDatabasesError("database and graph registries differ");
  }
  int r = db.index_of(normalize_knot_name(knot));
  int v = db.registry().index_of(vertex);
  const KnotRecord& rec = db.record(r);
  std::string out = vertex + " of " + rec.id + " = " + rec.values[v].to_string() + "\n";
  long end = static_cast<long>(db.events(r).size());
  trace(out, db, g, r, v, BoundSide::Lower, end, 1, max_depth);
  trace(out, db, g, r, v, BoundSide::Upper, end, 1, max_depth);
  return out;
}

}  // namespace knotineq
