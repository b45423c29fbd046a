#pragma once

#include <functional>
#include <map>
#include <vector>

#include "rsol/formula.hpp"

namespace rsol {

struct ThetaMember;

// Simultaneous, capture-avoiding substitution for every sort. Binders that
// would capture a variable of the substituted material are renamed to fresh
// indices (successor of the largest index in use).
struct Substitution {
  std::map<Variable, Term> individuals;
  std::map<Variable, Variable> relations;
  std::map<Variable, Variable> blocks;

  bool empty() const { return individuals.empty() && relations.empty() && blocks.empty(); }
};

struct SubstitutionResult {
  Formula formula;
  // False when some binder had to be renamed, i.e. the substituted material
  // was not free for the replaced variable.
  bool free_for = true;
};

SubstitutionResult apply_substitution(const Formula& f, const Substitution& s);
Term apply_substitution(const Term& t, const std::map<Variable, Term>& s);

Formula substitute_fo(const Formula& f, const Variable& x, const Term& t);

// Replaces free occurrences of `from` (in applications and second-order
// identities) by `to`. Throws ArityError when arities differ.
SubstitutionResult substitute_so(const Formula& f, const Variable& from, const Variable& to);

// theta(x̄, ȳ) with slots replaced by `slots` and parameters by `params`.
Formula instantiate_theta(const ThetaMember& theta, const std::vector<Term>& slots,
                          const std::vector<Variable>& params);

// Replaces every free occurrence rel(t̄) by build(t̄). The builder's result
// must only add variables occurring in t̄ or fresh for `f`.
Formula replace_relation(const Formula& f, const Variable& rel,
                         const std::function<Formula(const std::vector<Term>&)>& build);

// The instance φ^{l+1,m}_n: free occurrences rel(t̄) become theta(t̄, ȳ) for
// parameter variables ȳ fresh w.r.t. f, and the result is prefixed with ∀ȳ.
// Throws ArityError if theta's arity differs from rel's.
Formula a6_instantiate(const Formula& f, const Variable& rel, const ThetaMember& theta);

// Schematic counterpart used by ω-templates: rel(t̄) becomes θ[n](t̄; block)
// and the result is prefixed with the block quantifier ∀block.
Formula a6_schematic(const Formula& f, const Variable& rel, const Variable& block);

}  // namespace rsol
