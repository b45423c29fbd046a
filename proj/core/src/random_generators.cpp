#include "rsol/random.hpp"

#include <stdexcept>

namespace rsol {

namespace {

std::uint32_t pick(Rng& rng, std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng); }

Variable relation_var(Rng& rng, const RandomFormulaOptions& opt) {
  std::uint32_t i = pick(rng, opt.relation_vars);
  return Variable::relation(i, opt.relation_arities[i % opt.relation_arities.size()]);
}

Formula atom(Rng& rng, const Signature& sig, const RandomFormulaOptions& opt) {
  std::vector<int> kinds;
  if (!sig.predicate_arities.empty()) kinds.push_back(0);
  if (sig.identity) kinds.push_back(1);
  if (opt.second_order && opt.relation_vars > 0) kinds.push_back(2);
  if (kinds.empty()) throw std::invalid_argument("no atomic formulas available");
  auto args = [&](std::uint32_t n) {
    std::vector<Term> ts;
    for (std::uint32_t i = 0; i < n; ++i) ts.push_back(random_term(rng, sig, opt.individual_vars, opt.term_depth));
    return ts;
  };
  switch (kinds[pick(rng, static_cast<std::uint32_t>(kinds.size()))]) {
    case 0: {
      std::uint32_t p = pick(rng, static_cast<std::uint32_t>(sig.predicate_arities.size()));
      return Formula::predicate(p, args(sig.predicate_arities[p]));
    }
    case 1: {
      auto ts = args(2);
      return Formula::equal(ts[0], ts[1]);
    }
    default: {
      Variable v = relation_var(rng, opt);
      return Formula::relation_apply(v, args(v.arity));
    }
  }
}

Formula build(Rng& rng, const Signature& sig, const RandomFormulaOptions& opt, std::uint32_t depth) {
  if (depth == 0 || pick(rng, 5) == 0) return atom(rng, sig, opt);
  std::uint32_t choices = opt.sugar ? 8 : 4;
  auto sub = [&] { return build(rng, sig, opt, depth - 1); };
  switch (pick(rng, choices)) {
    case 0: return Formula::negation(sub());
    case 1: return Formula::conjunction(sub(), sub());
    case 2: return Formula::forall(Variable::individual(pick(rng, opt.individual_vars)), sub());
    case 3:
      if (opt.second_order && opt.relation_quantifiers && opt.relation_vars > 0) {
        return Formula::forall(relation_var(rng, opt), sub());
      }
      return Formula::negation(sub());
    case 4: return Formula::disjunction(sub(), sub());
    case 5: return Formula::implication(sub(), sub());
    case 6: return Formula::biconditional(sub(), sub());
    default: return Formula::exists(Variable::individual(pick(rng, opt.individual_vars)), sub());
  }
}

}  // namespace

FiniteStructure random_structure(Rng& rng, const Signature& sig, std::uint32_t domain_size, double density) {
  FiniteStructure s = FiniteStructure::blank(sig, domain_size);
  std::bernoulli_distribution coin(density);
  for (auto& r : s.predicates) {
    for (std::size_t i = 0; i < r.tuple_count(); ++i) r.set_index(i, coin(rng));
  }
  for (auto& f : s.functions) {
    for (auto& v : f) v = pick(rng, domain_size);
  }
  for (auto& c : s.constants) c = pick(rng, domain_size);
  return s;
}

Term random_term(Rng& rng, const Signature& sig, std::uint32_t vars, std::uint32_t depth) {
  std::uint32_t options = vars + sig.constant_count;
  bool apply = depth > 0 && !sig.function_arities.empty() && (options == 0 || pick(rng, 3) == 0);
  if (apply) {
    std::uint32_t f = pick(rng, static_cast<std::uint32_t>(sig.function_arities.size()));
    std::vector<Term> args;
    for (std::uint32_t i = 0; i < sig.function_arities[f]; ++i) args.push_back(random_term(rng, sig, vars, depth - 1));
    return Term::apply(f, std::move(args));
  }
  if (options == 0) throw std::invalid_argument("no terms available");
  std::uint32_t k = pick(rng, options);
  return k < vars ? Term::variable(k) : Term::constant(k - vars);
}

Formula random_formula(Rng& rng, const Signature& sig, const RandomFormulaOptions& opt) {
  return build(rng, sig, opt, opt.depth);
}

Formula random_sentence(Rng& rng, const Signature& sig, const RandomFormulaOptions& opt) {
  return universal_closure(random_formula(rng, sig, opt));
}

}  // namespace rsol
