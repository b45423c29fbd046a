#pragma once

// Brute-force reference implementations used as test oracles. Everything here
// is deliberately naive: enumerate, then compare.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rsol/formula.hpp"
#include "rsol/structure.hpp"

namespace oracle {

using rsol::Element;
using rsol::FiniteStructure;
using rsol::Formula;
using rsol::FormulaKind;
using rsol::Relation;
using rsol::Term;
using rsol::Tuple;
using rsol::Variable;

inline std::vector<Tuple> all_tuples(std::uint32_t domain, std::uint32_t arity) {
  std::vector<Tuple> out;
  Tuple t(arity, 0);
  while (true) {
    out.push_back(t);
    std::uint32_t i = arity;
    while (i > 0 && ++t[i - 1] == domain) t[--i] = 0;
    if (i == 0) return out;
  }
}

// Every relation of the arity, one per subset of A^k.
inline std::vector<Relation> all_relations(std::uint32_t domain, std::uint32_t arity) {
  auto tuples = all_tuples(domain, arity);
  if (tuples.size() > 20) throw std::runtime_error("too many relations to enumerate");
  std::vector<Relation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tuples.size()); ++mask) {
    Relation r(arity, domain);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      if (mask >> i & 1u) r.insert(tuples[i]);
    }
    out.push_back(r);
  }
  return out;
}

inline bool preserves(const FiniteStructure& s, const std::vector<Element>& p) {
  for (const auto& r : s.predicates) {
    for (const auto& t : all_tuples(s.domain_size, r.arity())) {
      Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = p[t[i]];
      if (r.contains(t) != r.contains(img)) return false;
    }
  }
  for (std::size_t f = 0; f < s.functions.size(); ++f) {
    for (const auto& t : all_tuples(s.domain_size, s.sig.function_arities[f])) {
      Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = p[t[i]];
      if (p[s.apply(static_cast<std::uint32_t>(f), t)] != s.apply(static_cast<std::uint32_t>(f), img)) return false;
    }
  }
  for (Element c : s.constants) {
    if (p[c] != c) return false;
  }
  return true;
}

// Filters all n! permutations.
inline std::vector<std::vector<Element>> automorphisms(const FiniteStructure& s) {
  std::vector<Element> p(s.domain_size);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Element>> out;
  do {
    if (preserves(s, p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<Relation> invariant_relations(const FiniteStructure& s, std::uint32_t arity) {
  auto autos = automorphisms(s);
  std::vector<Relation> out;
  for (const auto& r : all_relations(s.domain_size, arity)) {
    bool inv = std::all_of(autos.begin(), autos.end(), [&](const auto& p) { return r.permuted(p) == r; });
    if (inv) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Second-order Tarski semantics written directly over the surface syntax.
// `range(k)` lists the relations a quantifier over arity k visits.
class Evaluator {
 public:
  using Range = std::function<std::vector<Relation>(std::uint32_t)>;

  Evaluator(const FiniteStructure& s, Range range) : s_(s), range_(std::move(range)) {}

  bool operator()(const Formula& f) { return eval(f); }

  std::map<Variable, Element> ind;
  std::map<Variable, Relation> rel;

 private:
  Element term(const Term& t) {
    switch (t.kind) {
      case rsol::TermKind::variable: return ind.at(t.var);
      case rsol::TermKind::constant: return s_.constants.at(t.symbol);
      case rsol::TermKind::apply: {
        std::vector<Element> args;
        for (const auto& a : t.args) args.push_back(term(a));
        return s_.apply(t.symbol, args);
      }
    }
    return 0;
  }

  Tuple args(const Formula& f) {
    Tuple out;
    for (const auto& t : f.terms()) out.push_back(term(t));
    return out;
  }

  template <typename T>
  bool bind(std::map<Variable, T>& env, const Variable& v, const T& value, const Formula& body) {
    auto saved = env.find(v) == env.end() ? std::nullopt : std::optional<T>(env.at(v));
    env[v] = value;
    bool r = eval(body);
    if (saved) {
      env[v] = *saved;
    } else {
      env.erase(v);
    }
    return r;
  }

  bool quantify(const Formula& f, bool universal) {
    const Variable& v = f.var();
    if (v.is_individual()) {
      for (Element a = 0; a < s_.domain_size; ++a) {
        if (bind(ind, v, a, f.left()) != universal) return !universal;
      }
      return universal;
    }
    for (const auto& r : range_(v.arity)) {
      if (bind(rel, v, r, f.left()) != universal) return !universal;
    }
    return universal;
  }

  bool eval(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::predicate: return s_.predicates.at(f.symbol()).contains(args(f));
      case FormulaKind::equal: return term(f.terms()[0]) == term(f.terms()[1]);
      case FormulaKind::relation_apply: return rel.at(f.var()).contains(args(f));
      case FormulaKind::relation_equal: return rel.at(f.var()) == rel.at(f.var2());
      case FormulaKind::negation: return !eval(f.left());
      case FormulaKind::conjunction: return eval(f.left()) && eval(f.right());
      case FormulaKind::disjunction: return eval(f.left()) || eval(f.right());
      case FormulaKind::implication: return !eval(f.left()) || eval(f.right());
      case FormulaKind::biconditional: return eval(f.left()) == eval(f.right());
      case FormulaKind::forall: return quantify(f, true);
      case FormulaKind::exists: return quantify(f, false);
      case FormulaKind::theta_apply: break;
    }
    throw std::runtime_error("schematic atom in evaluated formula");
  }

  const FiniteStructure& s_;
  Range range_;
};

inline bool eval_full(const FiniteStructure& s, const Formula& f) {
  Evaluator e(s, [&](std::uint32_t k) { return all_relations(s.domain_size, k); });
  return e(f);
}

inline bool eval_with(const FiniteStructure& s, const Formula& f, const std::vector<Relation>& k) {
  Evaluator e(s, [&](std::uint32_t arity) {
    std::vector<Relation> out;
    for (const auto& r : k) {
      if (r.arity() == arity) out.push_back(r);
    }
    return out;
  });
  return e(f);
}

}  // namespace oracle
