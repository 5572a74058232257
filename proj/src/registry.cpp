#include "knotineq/registry.hpp"

#include <cstdlib>
#include <string>

#include "knotineq/error.hpp"

namespace knotineq {

Transform parse_transform(const std::string& text) {
  Transform t;
  if (text == "id") {
    return t;
  }
  if (text == "2x") {
    t.scale = 2;
    return t;
  }
  if (text == "2x-2") {
    t.scale = 2;
    t.offset = -2;
    return t;
  }
  if (text == "x-1") {
    t.offset = -1;
    return t;
  }
  if (text == "x-2") {
    t.offset = -2;
    return t;
  }
  if (text == "abs") {
    t.kind = TransformKind::AbsThenAffine;
    return t;
  }
  if (text == "2abs") {
    t.kind = TransformKind::AbsThenAffine;
    t.scale = 2;
    return t;
  }
  if (text == "ceilhalf") {
    t.kind = TransformKind::CeilHalf;
    return t;
  }
  throw ParseError("unknown transform '" + text + "'");
}

std::string transform_to_string(const Transform& t) {
  switch (t.kind) {
    case TransformKind::CeilHalf:
      return "ceilhalf";
    case TransformKind::AbsThenAffine:
      return t.scale == 2 ? "2abs" : "abs";
    case TransformKind::Affine:
      if (t.scale == 2 && t.offset == -2) return "2x-2";
      if (t.scale == 2) return "2x";
      if (t.offset == -1) return "x-1";
      if (t.offset == -2) return "x-2";
      return "id";
  }
  return "id";
}

namespace {

Value checked_affine(Value v, const Transform& t) {
  if (v == kUnbounded) return kUnbounded;
  Value scaled = v * t.scale + t.offset;
  if (scaled > kMaxMagnitude || scaled < -kMaxMagnitude) {
    throw OverflowError("transformed value " + std::to_string(scaled) + " out of range");
  }
  return scaled;
}

}  // namespace

Interval to_vertex(Value raw_lo, Value raw_hi, const Transform& t) {
  switch (t.kind) {
    case TransformKind::Affine: {
      Value lo = checked_affine(raw_lo, t);
      Value hi = checked_affine(raw_hi, t);
      if (lo < 0) lo = 0;
      return Interval(lo, hi);
    }
    case TransformKind::AbsThenAffine: {
      // Raw bounds may straddle zero; the image of |.| over [lo, hi] is
      // [0, max] when the interval contains zero, else [min|.|, max|.|].
      if (raw_hi == kUnbounded) {
        Value lo = 0;
        if (raw_lo > 0) lo = raw_lo;
        return Interval(checked_affine(lo, t), kUnbounded);
      }
      Value a = raw_lo < 0 ? -raw_lo : raw_lo;
      Value b = raw_hi < 0 ? -raw_hi : raw_hi;
      Value big = a > b ? a : b;
      Value small;
      if (raw_lo <= 0 && raw_hi >= 0) {
        small = 0;
      } else {
        small = a < b ? a : b;
      }
      return Interval(checked_affine(small, t), checked_affine(big, t));
    }
    case TransformKind::CeilHalf: {
      Value lo = raw_lo <= 0 ? 0 : (raw_lo + 1) / 2;
      Value hi = raw_hi == kUnbounded ? kUnbounded : (raw_hi <= 0 ? 0 : (raw_hi + 1) / 2);
      return Interval(lo, hi);
    }
  }
  throw ParseError("bad transform kind");
}

ReportedRange from_vertex(const Interval& iv, const Transform& t) {
  ReportedRange r;
  switch (t.kind) {
    case TransformKind::Affine: {
      Value lo = iv.lo() - t.offset;
      Value hi = iv.hi();
      if (hi != kUnbounded) hi -= t.offset;
      if (t.scale == 2) {
        if ((lo & 1) || (hi != kUnbounded && (hi & 1))) {
          throw NonIntegralError("no integral preimage of " + iv.to_string());
        }
        lo /= 2;
        if (hi != kUnbounded) hi /= 2;
      }
      r.range = Interval(lo < 0 ? 0 : lo, hi);
      return r;
    }
    case TransformKind::AbsThenAffine:
    case TransformKind::CeilHalf:
      // Sign (or the floor parity) is lost; report the vertex units.
      r.range = iv;
      r.invertible = false;
      return r;
  }
  r.range = iv;
  return r;
}

SourceClass parse_source_class(const std::string& text) {
  if (text == "knotinfo") return SourceClass::KnotInfo;
  if (text == "reference") return SourceClass::Reference;
  if (text == "unknown") return SourceClass::Unknown;
  throw ParseError("unknown source class '" + text + "'");
}

std::string source_class_to_string(SourceClass s) {
  switch (s) {
    case SourceClass::KnotInfo:
      return "knotinfo";
    case SourceClass::Reference:
      return "reference";
    case SourceClass::Unknown:
      return "unknown";
  }
  return "unknown";
}

void Registry::add(VertexDef def) {
  if (index_.count(def.id)) {
    throw GraphSpecError(GraphSpecError::Kind::Malformed,
                         "duplicate vertex id '" + def.id + "'");
  }
  index_.emplace(def.id, static_cast<int>(defs_.size()));
  defs_.push_back(std::move(def));
}

int Registry::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

int Registry::index_of(const std::string& id) const {
  int i = find(id);
  if (i < 0) throw UnknownVertexError(id);
  return i;
}

bool Registry::operator==(const Registry& other) const {
  return defs_ == other.defs_;
}

}  // namespace knotineq
