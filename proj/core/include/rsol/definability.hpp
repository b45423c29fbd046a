#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsol/evaluation.hpp"
#include "rsol/structure.hpp"
#include "rsol/theta.hpp"

namespace rsol {

struct Provenance {
  enum class Source : std::uint8_t { theta, orbit_oracle, closed_form, rank_types };
  Source source = Source::theta;
  std::uint64_t theta_index = 0;
  Tuple params;
};

std::string to_string(const Provenance& p);

struct DefinedRelation {
  Relation relation;
  Provenance provenance;
};

// Relations grouped by arity, each list sorted canonically and free of
// duplicates (the first witness found is kept).
struct DefinableFamily {
  std::map<std::uint32_t, std::vector<DefinedRelation>> by_arity;

  bool contains(const Relation& r) const;
  std::size_t size(std::uint32_t arity) const;
  std::vector<Relation> relations(std::uint32_t arity) const;
  // Witness of a member, if present.
  const DefinedRelation* find(const Relation& r) const;
  // Every relation of `other` (all arities) is here.
  bool includes(const DefinableFamily& other) const;
};

// Collects {d̄ | 𝔄 ⊨ θ_n[d̄, ē]} for n ≤ bound and every ē. Throws
// FeasibilityError when the parameter tuples of a single member exceed 10^7.
DefinableFamily materialize_k(const FiniteStructure& s, const ThetaFamily& fam, std::uint64_t bound,
                              std::uint32_t arity);

// Permutations of the domain preserving predicates, functions and constants.
// Throws FeasibilityError above |A| = 8.
std::vector<std::vector<Element>> automorphisms(const FiniteStructure& s);

// Orbits of the automorphism group on A^k, each as a relation.
std::vector<Relation> orbits(const FiniteStructure& s, std::uint32_t arity);

// Exact first-order definable relations of the given arity.
//   no parameters: unions of automorphism orbits (identity required);
//   with parameters: every relation (with identity), or the relations
//   saturated under the Leibniz congruence (identity-free signatures).
// Throws FeasibilityError when the result would exceed 2^20 relations.
DefinableFamily k_exact_orbits(const FiniteStructure& s, bool with_parameters, std::uint32_t arity);

// Relations of the given arity definable without parameters by formulas of
// quantifier rank ≤ rank, computed by refining Ehrenfeucht–Fraïssé types.
DefinableFamily rank_definable(const FiniteStructure& s, std::uint32_t rank, std::uint32_t arity);

// Partition of A^k into rank-r types (class id per tuple index).
std::vector<std::uint32_t> rank_types(const FiniteStructure& s, std::uint32_t rank, std::uint32_t arity);

// Unions of the given blocks, one relation per subset of blocks.
std::vector<Relation> unions_of(const std::vector<Relation>& blocks);

// K-providers. Results are computed on first request per arity.
KProviderPtr bounded_provider(const FiniteStructure& s, ThetaFamilyPtr fam, std::uint64_t bound);
KProviderPtr orbit_provider(const FiniteStructure& s, bool with_parameters);
KProviderPtr rank_provider(const FiniteStructure& s, std::uint32_t rank);
KProviderPtr explicit_provider(DefinableFamily fam, std::string description = "explicit");
// The exact K of a built-in family on a finite structure: weak_so gives the
// nonempty relations of its arities, dsl the parameter-free orbit oracle,
// all_fo / exists-n / forall-n the with-parameters oracle. Custom families
// have no exact oracle (PreconditionError).
KProviderPtr exact_provider(const FiniteStructure& s, const ThetaFamily& fam);

StandardModel make_model(const FiniteStructure& s, KProviderPtr k);

}  // namespace rsol
