#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "knotineq/interval.hpp"

namespace knotineq {

// How a graph-vertex value is computed from the underlying invariant.
// Affine covers the identity, doublings, and shifted forms (2b-2, m-1);
// AbsThenAffine folds a signed invariant through |.| first (|sigma|, 2|tau|);
// CeilHalf is the rounded half used for the Jones span vertex.
enum class TransformKind { Affine, AbsThenAffine, CeilHalf };

struct Transform {
  TransformKind kind = TransformKind::Affine;
  Value scale = 1;
  Value offset = 0;

  bool operator==(const Transform&) const = default;
};

Transform parse_transform(const std::string& text);
std::string transform_to_string(const Transform& t);

// Maps a raw invariant range (signed allowed for AbsThenAffine inputs) into
// vertex units. The resulting lower end is clamped to 0.
Interval to_vertex(Value raw_lo, Value raw_hi, const Transform& t);

// Result of mapping a vertex interval back to natural invariant units.
// Non-affine transforms are not invertible; the vertex-unit interval is
// returned as-is with `invertible` cleared.
struct ReportedRange {
  Interval range;
  bool invertible = true;
};

ReportedRange from_vertex(const Interval& iv, const Transform& t);

// Where a vertex's starting data comes from: ingested from KnotInfo
// exports, transcribed from the literature, or nowhere (no published
// tables).
enum class SourceClass { KnotInfo, Reference, Unknown };

SourceClass parse_source_class(const std::string& text);
std::string source_class_to_string(SourceClass c);

// One vertex of the inequality graph.
struct VertexDef {
  std::string id;              // short stable token, e.g. "2u", "alpha-2"
  std::string display;         // vertex expression, e.g. "2b-2", "|sigma|"
  std::string base_invariant;  // e.g. "unknotting number"
  Transform transform;
  Parity parity = Parity::Any;
  SourceClass source_class = SourceClass::Unknown;

  bool operator==(const VertexDef&) const = default;
};

// The ordered set of registered vertex quantities. Order is canonical and
// drives every deterministic iteration in the pipeline.
class Registry {
 public:
  void add(VertexDef def);

  std::size_t size() const { return defs_.size(); }
  const VertexDef& def(int index) const { return defs_[index]; }
  const std::vector<VertexDef>& defs() const { return defs_; }

  // Index of a vertex id, or -1 when unregistered.
  int find(const std::string& id) const;
  // Index of a vertex id; throws UnknownVertexError when unregistered.
  int index_of(const std::string& id) const;

  bool operator==(const Registry& other) const;

 private:
  std::vector<VertexDef> defs_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace knotineq
