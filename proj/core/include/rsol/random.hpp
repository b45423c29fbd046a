#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rsol/formula.hpp"
#include "rsol/structure.hpp"

namespace rsol {

using Rng = std::mt19937_64;

FiniteStructure random_structure(Rng& rng, const Signature& sig, std::uint32_t domain_size, double density = 0.5);

struct RandomFormulaOptions {
  std::uint32_t depth = 4;
  std::uint32_t individual_vars = 3;  // x0..x{k-1}
  std::uint32_t relation_vars = 2;    // X0.., arities drawn from relation_arities
  std::vector<std::uint32_t> relation_arities{1};
  bool second_order = true;          // relation atoms X(t...)
  bool relation_quantifiers = true;  // forall X; ignored without second_order
  bool sugar = true;  // also emit ∨ → ↔ ∃
  std::uint32_t term_depth = 1;
};

Term random_term(Rng& rng, const Signature& sig, std::uint32_t vars, std::uint32_t depth);
Formula random_formula(Rng& rng, const Signature& sig, const RandomFormulaOptions& opt);
// Universal closure of a random formula.
Formula random_sentence(Rng& rng, const Signature& sig, const RandomFormulaOptions& opt);

}  // namespace rsol
