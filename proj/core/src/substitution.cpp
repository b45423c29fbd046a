#include "rsol/substitution.hpp"

#include "rsol/error.hpp"
#include "rsol/theta.hpp"

namespace rsol {

namespace {

class Substituter {
 public:
  Substituter(const Formula& f, const Substitution& s) {
    supply_.observe(f);
    for (const auto& [k, t] : s.individuals) {
      supply_.observe(k);
      supply_.observe(t);
    }
    for (const auto& [k, v] : s.relations) {
      supply_.observe(k);
      supply_.observe(v);
    }
    for (const auto& [k, v] : s.blocks) {
      supply_.observe(k);
      supply_.observe(v);
    }
  }

  Formula run(const Formula& f, const Substitution& s) {
    if (s.empty()) return f;
    using K = FormulaKind;
    switch (f.kind()) {
      case K::predicate: return Formula::predicate(f.symbol(), terms(f.terms(), s));
      case K::equal: {
        auto ts = terms(f.terms(), s);
        return Formula::equal(ts[0], ts[1]);
      }
      case K::relation_apply: return Formula::relation_apply(relation(f.var(), s), terms(f.terms(), s));
      case K::relation_equal: return Formula::relation_equal(relation(f.var(), s), relation(f.var2(), s));
      case K::theta_apply: {
        auto it = s.blocks.find(f.var());
        return Formula::theta_apply(terms(f.terms(), s), it == s.blocks.end() ? f.var() : it->second);
      }
      case K::negation: return Formula::negation(run(f.left(), s));
      case K::conjunction: return Formula::conjunction(run(f.left(), s), run(f.right(), s));
      case K::disjunction: return Formula::disjunction(run(f.left(), s), run(f.right(), s));
      case K::implication: return Formula::implication(run(f.left(), s), run(f.right(), s));
      case K::biconditional: return Formula::biconditional(run(f.left(), s), run(f.right(), s));
      case K::forall:
      case K::exists: return binder(f, s);
    }
    return f;
  }

  bool free_for() const { return free_for_; }

 private:
  static Variable relation(const Variable& v, const Substitution& s) {
    auto it = s.relations.find(v);
    return it == s.relations.end() ? v : it->second;
  }

  static std::vector<Term> terms(const std::vector<Term>& ts, const Substitution& s) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(apply_substitution(t, s.individuals));
    return out;
  }

  Formula binder(const Formula& f, const Substitution& s) {
    const Variable& v = f.var();
    FreeVariables fv = free_variables(f.left());
    Substitution inner;
    std::set<Variable> range;
    for (const auto& [k, t] : s.individuals) {
      if (k != v && fv.contains(k)) {
        inner.individuals.emplace(k, t);
        collect_variables(t, range);
      }
    }
    for (const auto& [k, r] : s.relations) {
      if (k != v && fv.contains(k)) {
        inner.relations.emplace(k, r);
        range.insert(r);
      }
    }
    for (const auto& [k, b] : s.blocks) {
      if (k != v && fv.contains(k)) {
        inner.blocks.emplace(k, b);
        range.insert(b);
      }
    }
    if (inner.empty()) return f;
    Variable bound = v;
    if (range.count(v)) {
      bound = supply_.fresh_like(v);
      free_for_ = false;
      switch (v.sort) {
        case Sort::individual: inner.individuals[v] = Term::variable(bound); break;
        case Sort::relation: inner.relations[v] = bound; break;
        case Sort::block: inner.blocks[v] = bound; break;
      }
    }
    Formula body = run(f.left(), inner);
    return f.kind() == FormulaKind::forall ? Formula::forall(bound, body) : Formula::exists(bound, body);
  }

  FreshSupply supply_;
  bool free_for_ = true;
};

}  // namespace

Term apply_substitution(const Term& t, const std::map<Variable, Term>& s) {
  switch (t.kind) {
    case TermKind::variable: {
      auto it = s.find(t.var);
      return it == s.end() ? t : it->second;
    }
    case TermKind::constant: return t;
    case TermKind::apply: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(apply_substitution(a, s));
      return Term::apply(t.symbol, std::move(args));
    }
  }
  return t;
}

SubstitutionResult apply_substitution(const Formula& f, const Substitution& s) {
  Substituter sub(f, s);
  Formula out = sub.run(f, s);
  return {out, sub.free_for()};
}

Formula substitute_fo(const Formula& f, const Variable& x, const Term& t) {
  if (!x.is_individual()) throw ArityError("substitute_fo expects a first-order variable");
  Substitution s;
  s.individuals.emplace(x, t);
  return apply_substitution(f, s).formula;
}

SubstitutionResult substitute_so(const Formula& f, const Variable& from, const Variable& to) {
  if (!from.is_relation() || !to.is_relation()) throw ArityError("substitute_so expects second-order variables");
  if (from.arity != to.arity) {
    throw ArityError("cannot substitute " + to_string(to) + " for " + to_string(from) + ": arities differ");
  }
  Substitution s;
  s.relations.emplace(from, to);
  return apply_substitution(f, s);
}

Formula instantiate_theta(const ThetaMember& theta, const std::vector<Term>& slots,
                          const std::vector<Variable>& params) {
  if (slots.size() != theta.slots.size()) {
    throw ArityError("theta member " + std::to_string(theta.index) + " has arity " +
                     std::to_string(theta.slots.size()) + ", applied to " + std::to_string(slots.size()));
  }
  if (params.size() != theta.params.size()) {
    throw ArityError("theta member " + std::to_string(theta.index) + " takes " +
                     std::to_string(theta.params.size()) + " parameter(s)");
  }
  Substitution s;
  for (std::size_t i = 0; i < slots.size(); ++i) s.individuals.emplace(theta.slots[i], slots[i]);
  for (std::size_t i = 0; i < params.size(); ++i) s.individuals.emplace(theta.params[i], Term::variable(params[i]));
  return apply_substitution(theta.formula, s).formula;
}

Formula replace_relation(const Formula& f, const Variable& rel,
                         const std::function<Formula(const std::vector<Term>&)>& build) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::relation_apply:
      return f.var() == rel ? build(f.terms()) : f;
    case K::predicate:
    case K::equal:
    case K::relation_equal:
    case K::theta_apply:
      return f;
    case K::negation: return Formula::negation(replace_relation(f.left(), rel, build));
    case K::conjunction:
      return Formula::conjunction(replace_relation(f.left(), rel, build), replace_relation(f.right(), rel, build));
    case K::disjunction:
      return Formula::disjunction(replace_relation(f.left(), rel, build), replace_relation(f.right(), rel, build));
    case K::implication:
      return Formula::implication(replace_relation(f.left(), rel, build), replace_relation(f.right(), rel, build));
    case K::biconditional:
      return Formula::biconditional(replace_relation(f.left(), rel, build),
                                    replace_relation(f.right(), rel, build));
    case K::forall:
    case K::exists: {
      if (f.var() == rel) return f;
      Formula body = replace_relation(f.left(), rel, build);
      return f.kind() == K::forall ? Formula::forall(f.var(), body) : Formula::exists(f.var(), body);
    }
  }
  return f;
}

Formula a6_instantiate(const Formula& f, const Variable& rel, const ThetaMember& theta) {
  if (!rel.is_relation()) throw ArityError("A6 instantiation needs a second-order variable");
  if (theta.slots.size() != rel.arity) {
    throw ArityError("theta member " + std::to_string(theta.index) + " has arity " +
                     std::to_string(theta.slots.size()) + " but " + to_string(rel) + " has arity " +
                     std::to_string(rel.arity));
  }
  FreshSupply supply;
  supply.observe(f);
  std::vector<Variable> params;
  params.reserve(theta.params.size());
  for (std::size_t i = 0; i < theta.params.size(); ++i) params.push_back(supply.fresh_like(Variable::individual(0)));
  Formula body = replace_relation(f, rel, [&](const std::vector<Term>& args) {
    return instantiate_theta(theta, args, params);
  });
  return Formula::forall(params, body);
}

Formula a6_schematic(const Formula& f, const Variable& rel, const Variable& block) {
  if (!rel.is_relation() || !block.is_block()) {
    throw ArityError("schematic A6 needs a second-order variable and a parameter block");
  }
  Formula body = replace_relation(f, rel, [&](const std::vector<Term>& args) {
    return Formula::theta_apply(args, block);
  });
  return Formula::forall(block, body);
}

}  // namespace rsol
