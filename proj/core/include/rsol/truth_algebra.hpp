#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsol/boolean.hpp"
#include "rsol/definability.hpp"
#include "rsol/evaluation.hpp"

namespace rsol {

// Formulas over a finite standard structure, ordered by truth-set inclusion.
// The carrier is the powerset of A^v (assignments to x0..x_{v-1}).
class TruthAlgebra {
 public:
  using Element = PowersetAlgebra::Element;

  TruthAlgebra(StandardModel model, std::uint32_t v);

  const PowersetAlgebra& algebra() const { return alg_; }
  const StandardModel& model() const { return model_; }
  std::uint32_t variables() const { return v_; }

  // Satisfying assignments of f. Throws PreconditionError when f has a free
  // individual variable x_i with i ≥ v.
  Element class_of(const Formula& f, const Assignment& a = {}) const;
  bool leq(const Formula& f, const Formula& g) const;

 private:
  StandardModel model_;
  std::uint32_t v_;
  PowersetAlgebra alg_;
};

enum class LemmaItem : std::uint8_t { i = 1, ii, iii, iv, v, vi };

LemmaItem parse_lemma_item(const std::string& text);
std::string to_string(LemmaItem item);

struct LemmaCheck {
  bool holds = false;
  std::string lhs;  // class of the quantified formula
  std::string rhs;  // meet or join of the instances
  std::uint64_t instances = 0;
};

// Quantifier-as-meet identities on a finite structure, in the truth algebra
// of v variables with K = materialize_k(fam, N):
//   (i)   [∀x φ]  = ⋀_a [φ(x/c_a)]       (c_a a fresh constant naming a)
//   (ii)  [∃x φ]  = ⋁_a [φ(x/c_a)]
//   (iii) [∀V φ]  = ⋀_{B∈K} [φ(V/B)]
//   (iv)  [∃V φ]  = ⋁_{B∈K} [φ(V/B)]
//   (v)   [∀V φ]  = ⋀_{n≤N} [φ^n]        (φ^n the A6 instance)
//   (vi)  [∃V φ]  = ⋁_{n≤N} [¬(¬φ)^n]
// `var` is x for (i)/(ii) and V otherwise. φ may not have free relation
// variables other than V.
LemmaCheck lemma_reg_check(const FiniteStructure& s, std::uint32_t v, const Formula& phi, const Variable& var,
                           LemmaItem item, const ThetaFamilyPtr& fam, std::uint64_t bound);

// Regular family built from classes of substitution instances: for every
// formula ψ, every free individual variable x of ψ below v and every free
// relation variable V of ψ, the meet and join entries of items (i)-(iv),
// with their bounds [∀x ψ], [∃x ψ], [∀V ψ], [∃V ψ]. Elements live in
// `ta.algebra()`; entries are finite and exact.
std::vector<RegularEntry<TruthAlgebra::Element>> instance_family(const TruthAlgebra& ta,
                                                                 const std::vector<Formula>& formulas);

}  // namespace rsol
