#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rsol/formula.hpp"
#include "rsol/structure.hpp"
#include "rsol/theta.hpp"

namespace rsol {

struct Assignment {
  std::map<Variable, Element> individuals;
  std::map<Variable, Relation> relations;
};

// Supplies K_Θ^A one arity at a time. Relations are deduplicated and in
// canonical order. Implementations cache and may be shared across threads.
class KProvider {
 public:
  virtual ~KProvider() = default;
  virtual const std::vector<Relation>& relations(std::uint32_t arity) const = 0;
  virtual std::string describe() const = 0;

  bool contains(const Relation& r) const;
};

using KProviderPtr = std::shared_ptr<const KProvider>;

// (𝔄, K_Θ^A).
struct StandardModel {
  FiniteStructure structure;
  KProviderPtr k;

  const std::vector<Relation>& range(std::uint32_t arity) const { return k->relations(arity); }
};

// Tarskian evaluation of a first-order formula. Throws EvaluationError for
// unassigned free variables or second-order constructs.
bool eval_fo(const FiniteStructure& s, const Formula& f, const Assignment& a = {});

// Second-order quantifiers range over the model's K. Assigned relations that
// are free in f must belong to K; otherwise EvaluationError.
bool eval_so(const StandardModel& m, const Formula& f, const Assignment& a = {});

// Second-order quantifiers range over all relations of the arity. Throws
// FeasibilityError when some quantified arity has |A|^k > 20.
bool eval_full_so(const FiniteStructure& s, const Formula& f, const Assignment& a = {});

// {d̄ | 𝔄 ⊨ θ[d̄, ē]}.
Relation define_relation(const FiniteStructure& s, const ThetaMember& theta, const Tuple& params);

// Set of assignments to x0..x_{v-1} (lexicographic, as a relation of arity v)
// satisfying f; the optional assignment fixes other free variables.
Relation truth_set(const StandardModel& m, const Formula& f, std::uint32_t v, const Assignment& a = {});

}  // namespace rsol
