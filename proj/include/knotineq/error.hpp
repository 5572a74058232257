#pragma once

#include <stdexcept>
#include <string>

namespace knotineq {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An interval became empty: conflicting bounds from data, an edge, or a
// parity rule. Carries knot/vertex context when known.
class ContradictionError : public Error {
 public:
  ContradictionError(std::string message, std::string knot_id = "",
                     std::string vertex_id = "")
      : Error(compose(message, knot_id, vertex_id)),
        message_(std::move(message)),
        knot_id_(std::move(knot_id)),
        vertex_id_(std::move(vertex_id)) {}

  // The bare detail, without the composed context prefix. Rethrow sites that
  // add knot/vertex context build from this to avoid stacking prefixes.
  const std::string& message() const { return message_; }
  const std::string& knot_id() const { return knot_id_; }
  const std::string& vertex_id() const { return vertex_id_; }

 private:
  static std::string compose(const std::string& message,
                             const std::string& knot, const std::string& vertex) {
    std::string out = "contradiction";
    if (!knot.empty()) out += " [knot " + knot + "]";
    if (!vertex.empty()) out += " [vertex " + vertex + "]";
    out += ": " + message;
    return out;
  }

  std::string message_;
  std::string knot_id_;
  std::string vertex_id_;
};

// A magnitude left the supported integer domain; input data is corrupt.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// An affine inverse produced a fractional value; the parity configuration
// does not match the transform.
class NonIntegralError : public Error {
 public:
  using Error::Error;
};

// Structural problems in a graph description document.
class GraphSpecError : public Error {
 public:
  enum class Kind { DuplicateEdge, UnknownVertex, CycleDetected, LabelGap, Malformed };

  GraphSpecError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A table cell that does not parse under its column's syntax class.
class MalformedCellError : public Error {
 public:
  MalformedCellError(std::size_t row, std::string column, std::string text)
      : Error("malformed cell at row " + std::to_string(row) + ", column '" +
              column + "': '" + text + "'"),
        row_(row),
        column_(std::move(column)),
        text_(std::move(text)) {}

  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }
  const std::string& text() const { return text_; }

 private:
  std::size_t row_;
  std::string column_;
  std::string text_;
};

// A mapped column header is missing from the document.
class UnknownColumnError : public Error {
 public:
  using Error::Error;
};

// The same knot name appears twice in one table.
class DuplicateKnotError : public Error {
 public:
  using Error::Error;
};

// Generic config/data file syntax problem.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Two databases that were expected to share knots and registry do not.
class MismatchedDatabasesError : public Error {
 public:
  using Error::Error;
};

// A database handed to the miner still admits propagation.
class NotAFixedPointError : public Error {
 public:
  using Error::Error;
};

class UnknownKnotError : public Error {
 public:
  using Error::Error;
};

class UnknownVertexError : public Error {
 public:
  using Error::Error;
};

}  // namespace knotineq
