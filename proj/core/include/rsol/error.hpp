#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
  lexical,
  syntax,
  arity_mismatch,
  unknown_symbol,
  identity_disabled,
};

const char* to_string(ParseErrorKind kind);

// Raised by every text front end (formulas, proofs, families, structures).
// `position` is a byte offset into the parsed text, or a line number for
// line-oriented formats (see `line`).
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& message,
             std::size_t line = 0);

  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
  std::size_t line_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A size guard refused to start an enumeration that would not finish.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsol
