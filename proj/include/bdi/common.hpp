#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bdi {

/// Absolute tolerance used for every real-valued comparison in the library.
inline constexpr double kTolerance = 1e-9;

enum class Comparator { Ge, Gt, Le, Lt, Eq };

enum class Procedure { Maximin, MaxExpVal };

std::string_view to_string(Comparator c);
std::string_view to_string(Procedure p);
std::optional<Procedure> parse_procedure(std::string_view text);

/// Tolerant comparison `lhs cmp rhs`. The five comparators are mutually
/// consistent: `a <= b` iff `-a >= -b`, `a = b` iff `a >= b && a <= b`.
inline bool compare(double lhs, Comparator cmp, double rhs) {
  switch (cmp) {
    case Comparator::Ge: return lhs >= rhs - kTolerance;
    case Comparator::Gt: return lhs > rhs + kTolerance;
    case Comparator::Le: return lhs <= rhs + kTolerance;
    case Comparator::Lt: return lhs < rhs - kTolerance;
    case Comparator::Eq: return std::fabs(lhs - rhs) <= kTolerance;
  }
  return false;
}

inline bool nearly_equal(double a, double b) { return std::fabs(a - b) <= kTolerance; }

// Error hierarchy. Parse and input problems are distinguished from model
// problems so the CLI can map them to exit codes.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text: formula syntax, JSON syntax, schema violations.
class ParseError : public Error {
 public:
  ParseError(std::string message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A query that the model cannot answer (missing world, missing point,
/// missing distribution, non-core formula handed to the evaluator).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A construct that has no defined semantics here (e.g. conditional PROB
/// terms mixed into a linear combination).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A file that cannot be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Whole file contents. Throws IoError.
std::string read_file(const std::string& path);
/// Replaces the file. Throws IoError.
void write_file(const std::string& path, const std::string& contents);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_exact(double value);
/// Human-facing rendering with 12 significant digits ("225.2", not
/// "225.20000000000002").
std::string format_number(double value);
/// Parses a complete decimal literal; nullopt on trailing garbage.
std::optional<double> parse_number(std::string_view text);

}  // namespace bdi
