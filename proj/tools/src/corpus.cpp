#include "rsol_cli/corpus.hpp"

#include <cstring>

#include "rsol/error.hpp"
#include "rsol/proof_io.hpp"
#include "rsol/random.hpp"
#include "rsol/theta.hpp"

namespace rsol::cli {

const CorpusFile* find_corpus_file(const std::string& path) {
  for (const auto& f : embedded_corpus()) {
    if (path == f.path) return &f;
  }
  return nullptr;
}

std::vector<NamedProof> proof_corpus() {
  std::vector<NamedProof> out;
  for (const auto& f : embedded_corpus()) {
    std::string path = f.path;
    if (path.rfind("proofs/", 0) != 0) continue;
    std::string name = path.substr(7, path.size() - 7 - 4);
    out.push_back({name, parse_proof(f.text)});
  }
  return out;
}

Proof nonuniform_proof() {
  const CorpusFile* prf = find_corpus_file("nonuniform.prf");
  const CorpusFile* fam = find_corpus_file("nonuniform.theta");
  if (!prf || !fam) throw PreconditionError("nonuniform demo is missing from the embedded corpus");
  ProofReadOptions opt;
  opt.theta = parse_custom_family(fam->text, parse_signature("P0/1 P1/2 c1"), "custom:nonuniform.theta");
  return parse_proof(prf->text, opt);
}

std::vector<FiniteStructure> collapse_catalog() {
  std::vector<FiniteStructure> out;
  Signature binary = parse_signature("P0/1 P1/2");
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      FiniteStructure s = FiniteStructure::blank(binary, n);
      for (std::uint32_t a = 0; a < n; ++a) {
        if (mask >> a & 1u) s.predicates[0].insert({a});
      }
      out.push_back(std::move(s));
    }
  }
  Rng rng(20240611);
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (int k = 0; k < 4; ++k) out.push_back(random_structure(rng, binary, n, 0.4));
  }
  return out;
}

std::vector<Formula> collapse_sentences(std::size_t count) {
  Signature sig = parse_signature("P0/1 P1/2");
  RandomFormulaOptions opt;
  opt.depth = 4;
  opt.individual_vars = 2;
  opt.relation_vars = 2;
  opt.relation_arities = {1, 2};
  opt.term_depth = 0;
  Rng rng(7);
  std::vector<Formula> out;
  while (out.size() < count) {
    Formula f = random_sentence(rng, sig, opt);
    // Keep sentences that quantify a relation variable somewhere.
    if (is_first_order(f)) continue;
    out.push_back(f);
  }
  return out;
}

FiniteStructure two_element_pure() { return FiniteStructure::blank(parse_signature(""), 2); }

std::vector<FiniteStructure> orbit_catalog() {
  std::vector<FiniteStructure> out;
  Signature none = parse_signature("");
  for (std::uint32_t n = 1; n <= 4; ++n) out.push_back(FiniteStructure::blank(none, n));

  Signature unary = parse_signature("P0/1");
  for (std::uint32_t n = 2; n <= 4; ++n) {
    FiniteStructure s = FiniteStructure::blank(unary, n);
    s.predicates[0].insert({0});
    out.push_back(s);
    s.predicates[0].insert({1});
    out.push_back(std::move(s));
  }

  Signature graph = parse_signature("P0/2");
  for (std::uint32_t n = 2; n <= 4; ++n) {
    FiniteStructure cycle = FiniteStructure::blank(graph, n);
    FiniteStructure path = FiniteStructure::blank(graph, n);
    for (std::uint32_t a = 0; a < n; ++a) {
      cycle.predicates[0].insert({a, (a + 1) % n});
      if (a + 1 < n) path.predicates[0].insert({a, a + 1});
    }
    out.push_back(std::move(cycle));
    out.push_back(std::move(path));
  }

  Signature pointed = parse_signature("P0/2 c1");
  FiniteStructure star = FiniteStructure::blank(pointed, 4);
  for (std::uint32_t a = 1; a < 4; ++a) star.predicates[0].insert({0, a});
  star.constants[0] = 0;
  out.push_back(star);
  star.constants[0] = 1;
  out.push_back(std::move(star));

  Signature func = parse_signature("f0/1");
  FiniteStructure succ = FiniteStructure::blank(func, 4);
  succ.functions[0] = {1, 2, 3, 3};
  out.push_back(std::move(succ));

  Signature mixed = parse_signature("P0/1 P1/2");
  Rng rng(99);
  for (std::uint32_t n = 2; n <= 4; ++n) {
    for (int k = 0; k < 2; ++k) out.push_back(random_structure(rng, mixed, n, 0.5));
  }
  return out;
}

}  // namespace rsol::cli
