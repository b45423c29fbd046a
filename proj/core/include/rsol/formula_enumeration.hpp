#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "rsol/formula.hpp"

namespace rsol {

// Exhaustive generator of first-order formulas over the primitives ¬, ∧, ∀.
//
// Formulas are produced in canonical binder form: with `scope` variables
// x0..x_{scope-1} available, a quantifier at nesting depth d binds
// x_{scope+d}. Each alpha-equivalence class therefore appears exactly once.
//
// Size: variables and constants count 1, applications and atoms count one
// plus their arguments, ¬ and ∀ add one, ∧ adds one.
class FormulaEnumerator {
 public:
  explicit FormulaEnumerator(Signature sig);

  const std::vector<Term>& terms(std::size_t size, std::uint32_t scope);
  const std::vector<Formula>& formulas(std::size_t size, std::uint32_t scope);

  // Formulas of the given size whose free variables are exactly
  // x0..x_{free-1} (all of them occur free).
  std::vector<Formula> with_free_prefix(std::size_t size, std::uint32_t free);

  const Signature& signature() const { return sig_; }

 private:
  Signature sig_;
  std::map<std::pair<std::size_t, std::uint32_t>, std::vector<Term>> terms_;
  std::map<std::pair<std::size_t, std::uint32_t>, std::vector<Formula>> formulas_;
};

// Quantifier-alternation class of a first-order formula after prenexing:
// the least n with the formula in ∃_n and the least n with it in ∀_n.
// Quantifier-free formulas are ∃_0 and ∀_0.
struct PrefixClass {
  std::uint32_t exists_level = 0;
  std::uint32_t forall_level = 0;
};

PrefixClass classify_prefix(const Formula& f);
std::string to_string(const PrefixClass& c);

// Prenex normal form (over normalized primitives); binders are renamed apart
// first so that pulling quantifiers out never captures.
Formula prenex(const Formula& f);

}  // namespace rsol
