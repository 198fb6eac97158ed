#pragma once

#include <stdexcept>
#include <string>

namespace termdec {

/// Syntax or well-formedness error in an input program.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string msg, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// Case splitting in an entailment check passed the configured limit.
/// Signals a predicate too complex for this engine.
class EntailmentBudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A predicate grew past the cube/atom caps.
class PredicateSizeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An automaton exploration exceeded its state budget (complement blow-up).
class StateBudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Wall-clock deadline exceeded.
class TimeoutError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Certificate construction failed: the strongest post around the loop does
/// not re-enter the loop-head predicate (supporting invariant too weak).
class CertificateClosureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace termdec
