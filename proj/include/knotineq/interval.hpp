#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "knotineq/error.hpp"

namespace knotineq {

using Value = std::int64_t;

// Sentinel for "no finite upper bound".
inline constexpr Value kUnbounded = std::numeric_limits<Value>::max();

// Magnitude cap for finite bounds; anything beyond signals corrupt input.
inline constexpr Value kMaxMagnitude = Value{1} << 40;

enum class Parity { Any, Even };

// Closed integer interval [lo, hi] with lo >= 0 and hi possibly unbounded.
// This is the state of one vertex quantity for one knot.
class Interval {
 public:
  // Default state: nothing known, [0, +inf).
  constexpr Interval() = default;

  Interval(Value lo, Value hi) : lo_(lo), hi_(hi) {
    if (lo < 0 || lo > hi)
      throw ContradictionError("invalid interval [" + bound_to_string(lo) +
                               "," + bound_to_string(hi) + "]");
  }

  Value lo() const { return lo_; }
  Value hi() const { return hi_; }
  bool bounded() const { return hi_ != kUnbounded; }
  bool exact() const { return lo_ == hi_; }
  bool is_unknown() const { return lo_ == 0 && hi_ == kUnbounded; }

  bool contains(Value v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  bool operator==(const Interval&) const = default;

  static std::string bound_to_string(Value v) {
    return v == kUnbounded ? "inf" : std::to_string(v);
  }

  std::string to_string() const {
    return "[" + bound_to_string(lo_) + "," + bound_to_string(hi_) + "]";
  }

 private:
  Value lo_ = 0;
  Value hi_ = kUnbounded;
};

// Intersection of two intervals. Throws ContradictionError carrying both
// inputs when they are disjoint.
inline Interval meet(const Interval& a, const Interval& b) {
  const Value lo = a.lo() > b.lo() ? a.lo() : b.lo();
  const Value hi = a.hi() < b.hi() ? a.hi() : b.hi();
  if (lo > hi)
    throw ContradictionError("empty meet of " + a.to_string() + " and " +
                             b.to_string());
  return Interval(lo, hi);
}

// Rounds the endpoints of `iv` inward to the parity class: an Even quantity
// has its lo rounded up and its finite hi rounded down to the nearest even
// integer. Identity for Any.
inline Interval apply_parity(const Interval& iv, Parity p) {
  if (p == Parity::Any) return iv;
  Value lo = iv.lo() + (iv.lo() & 1);
  Value hi = iv.hi();
  if (hi != kUnbounded) hi -= hi & 1;
  if (lo > hi)
    throw ContradictionError("no even value in " + iv.to_string());
  return Interval(lo, hi);
}

inline Parity parse_parity(const std::string& text) {
  if (text == "even") return Parity::Even;
  if (text == "any") return Parity::Any;
  throw ParseError("unknown parity class '" + text + "'");
}

inline std::string parity_to_string(Parity p) {
  return p == Parity::Even ? "even" : "any";
}

}  // namespace knotineq
