#pragma once

#include <string>
#include <vector>

#include "rsol/calculus.hpp"

namespace rsol {

// Line-oriented proof files:
//
//   signature: P0/1 P1/2
//   theta: weak-so
//   sigma: forall x0 P0(x0)
//   goal: forall X0 X0(x0) -> forall X0 X0(x0)
//   template t1 over n : forall X0 X0(x0) -> forall X0 X0(x0) {
//     1. forall X0 X0(x0) -> theta[n](x0; ys0) ; A6(n)
//   }
//   1. forall X0 X0(x0) -> forall X0 X0(x0) ; R3 t1
//
// Justifications: `premise k`, a schema name (`K S contra taut Q1 Q2 E1 E2
// A1 A2 A3 A4 A5 A6`, where A1/A6 take an index `A6 3` or the meta index
// `A6(n)` inside templates), `MP i j` (i the antecedent line, j the
// implication), `gen i`, `R3 <template>`. Axiom instantiations are inferred
// when the file is read; `#` starts a comment.
struct ProofReadOptions {
  // Replaces the family named by the `theta:` header.
  ThetaFamilyPtr theta;
  // Directory against which relative `custom:<file>` specs are resolved.
  std::string base_dir;
};

Proof parse_proof(const std::string& text, const ProofReadOptions& options = {});
Proof load_proof(const std::string& path, const ProofReadOptions& options = {});

std::string print_proof(const Proof& p);
std::string describe(const Justification& j);

// One sentence per non-empty line.
std::vector<Formula> parse_sentences(const std::string& text, const Signature& sig);

}  // namespace rsol
