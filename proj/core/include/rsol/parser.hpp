#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "rsol/formula.hpp"

namespace rsol {

// Maps non-canonical variable names ("x", "y", "Y", "z3") to indices. Names of
// the form x<N> / X<N> / ys<N> always denote index N. Other names are handed
// indices above every canonical index seen by `reserve`, in order of first
// appearance, so one table can be shared across all formulas of a file.
class NameTable {
 public:
  // Bumps the fresh counters past every canonical index occurring in `text`.
  void reserve(std::string_view text);

  Variable individual(const std::string& name);
  std::uint32_t relation_index(const std::string& name);

 private:
  std::map<std::string, std::uint32_t> individuals_;
  std::map<std::string, std::uint32_t> relations_;
  std::uint32_t next_individual_ = 0;
  std::uint32_t next_relation_ = 0;
};

struct ParseOptions {
  // Accept schematic atoms `θ[n](t...; ysK)` and block quantifiers `∀ysK`.
  bool allow_theta = false;
  // When set, `theta[n]` atoms must have this many slots.
  std::uint32_t theta_arity = 0;
  // Shared name table; a private one is used when null.
  NameTable* names = nullptr;
};

// Concrete grammar, loosest to tightest binding:
//   a <-> b,  a -> b (right associative),  a | b,  a & b,
//   ~a, forall v a, exists v a.
// Quantifiers bind like negation; `forall x. a` extends the scope as far
// right as possible. Unicode ∀ ∃ ¬ ∧ ∨ → ↔ and subscript digits are accepted.
Formula parse_formula(std::string_view text, const Signature& sig, const ParseOptions& options = {});

// Parses a single variable token such as `x3`, `X1^2` or `ys0`.
Variable parse_variable(std::string_view text, NameTable* names = nullptr);

struct PrintOptions {
  bool ascii = false;
  // Print normalized encodings of ->, |, <->, exists with their sugar.
  bool resugar = false;
};

std::string print(const Formula& f, const PrintOptions& options = {});
std::string print(const Term& t);

// Rewrites the normalized encodings back into sugar nodes (display only).
Formula resugar(const Formula& f);

}  // namespace rsol
