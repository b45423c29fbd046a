#pragma once

#include <string>
#include <vector>

#include "rsol/calculus.hpp"
#include "rsol/formula.hpp"
#include "rsol/structure.hpp"

namespace rsol::cli {

struct CorpusFile {
  const char* path;  // relative to corpus/
  const char* text;
};

// Every .prf and .theta file of corpus/, compiled in.
const std::vector<CorpusFile>& embedded_corpus();
const CorpusFile* find_corpus_file(const std::string& path);

struct NamedProof {
  std::string name;
  Proof proof;
};

// The accepted proofs of corpus/proofs, in file order.
std::vector<NamedProof> proof_corpus();

// corpus/nonuniform.prf with its custom family.
Proof nonuniform_proof();

// Structures with |A| <= 3 over P0/1 P1/2: every structure with P1 empty,
// plus seeded random ones.
std::vector<FiniteStructure> collapse_catalog();
// Seeded sentences over P0/1 P1/2 with unary and binary relation variables.
std::vector<Formula> collapse_sentences(std::size_t count);

// At least twenty structures with |A| <= 4 for orbit comparisons.
std::vector<FiniteStructure> orbit_catalog();

// The 2-element structure over the empty signature (identity only).
FiniteStructure two_element_pure();

}  // namespace rsol::cli
