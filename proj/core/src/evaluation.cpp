#include "rsol/evaluation.hpp"

#include <algorithm>
#include <functional>

#include "rsol/error.hpp"
#include "rsol/parser.hpp"

namespace rsol {

bool KProvider::contains(const Relation& r) const {
  const auto& rs = relations(r.arity());
  return std::binary_search(rs.begin(), rs.end(), r);
}

namespace {

enum class Mode { first_order, standard, full };

constexpr std::size_t kFullSoMaxTuples = 20;

class Evaluator {
 public:
  Evaluator(const FiniteStructure& s, Mode mode, const KProvider* k) : s_(s), mode_(mode), k_(k) {}

  void bind(const Assignment& a) {
    for (const auto& [v, e] : a.individuals) {
      if (e >= s_.domain_size) throw EvaluationError(to_string(v) + " is assigned an element outside the domain");
      ind_.emplace_back(v, e);
    }
    for (const auto& [v, r] : a.relations) {
      if (!v.is_relation() || r.arity() != v.arity || r.domain() != s_.domain_size) {
        throw EvaluationError(to_string(v) + " is assigned a relation of the wrong shape");
      }
      rel_.emplace_back(v, &r);
    }
  }

  bool run(const Formula& f) {
    using K = FormulaKind;
    switch (f.kind()) {
      case K::predicate: {
        const Relation& p = s_.predicates.at(f.symbol());
        return p.contains_index(encode(f.terms(), p));
      }
      case K::equal: return term(f.terms()[0]) == term(f.terms()[1]);
      case K::relation_apply: {
        const Relation& r = relation(f.var());
        return r.contains_index(encode(f.terms(), r));
      }
      case K::relation_equal: return relation(f.var()) == relation(f.var2());
      case K::theta_apply:
        throw EvaluationError("schematic atom " + print(f) + " must be instantiated before evaluation");
      case K::negation: return !run(f.left());
      case K::conjunction: return run(f.left()) && run(f.right());
      case K::disjunction: return run(f.left()) || run(f.right());
      case K::implication: return !run(f.left()) || run(f.right());
      case K::biconditional: return run(f.left()) == run(f.right());
      case K::forall: return quantify(f.var(), f.left(), true);
      case K::exists: return quantify(f.var(), f.left(), false);
    }
    return false;
  }

 private:
  Element lookup(const Variable& v) const {
    for (auto it = ind_.rbegin(); it != ind_.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    throw EvaluationError("unassigned variable " + to_string(v));
  }

  const Relation& relation(const Variable& v) const {
    for (auto it = rel_.rbegin(); it != rel_.rend(); ++it) {
      if (it->first == v) return *it->second;
    }
    throw EvaluationError("unassigned variable " + to_string(v));
  }

  Element term(const Term& t) const {
    switch (t.kind) {
      case TermKind::variable: return lookup(t.var);
      case TermKind::constant: return s_.constants.at(t.symbol);
      case TermKind::apply: {
        std::size_t idx = 0;
        for (const auto& a : t.args) idx = idx * s_.domain_size + term(a);
        return s_.functions.at(t.symbol)[idx];
      }
    }
    return 0;
  }

  std::size_t encode(const std::vector<Term>& ts, const Relation& r) const {
    if (ts.size() != r.arity()) throw ArityError("atom applied to the wrong number of arguments");
    std::size_t idx = 0;
    for (const auto& t : ts) idx = idx * s_.domain_size + term(t);
    return idx;
  }

  bool quantify(const Variable& v, const Formula& body, bool universal) {
    if (v.is_individual()) {
      ind_.emplace_back(v, 0);
      bool result = universal;
      for (Element e = 0; e < s_.domain_size; ++e) {
        ind_.back().second = e;
        if (run(body) != universal) {
          result = !universal;
          break;
        }
      }
      ind_.pop_back();
      return result;
    }
    if (!v.is_relation()) throw EvaluationError("parameter block quantifiers must be instantiated before evaluation");
    if (mode_ == Mode::first_order) {
      throw EvaluationError("second-order quantifier over " + to_string(v) + " in a first-order evaluation");
    }
    bool result = universal;
    auto visit = [&](const Relation& r) {
      rel_.emplace_back(v, &r);
      bool value = run(body);
      rel_.pop_back();
      if (value != universal) {
        result = !universal;
        return false;
      }
      return true;
    };
    if (mode_ == Mode::standard) {
      if (!k_) throw EvaluationError("second-order quantifier but the model has no K provider");
      for (const auto& r : k_->relations(v.arity)) {
        if (!visit(r)) break;
      }
    } else {
      Relation r(v.arity, s_.domain_size);
      std::size_t n = r.tuple_count();
      if (n > kFullSoMaxTuples) {
        throw FeasibilityError("full second-order range for arity " + std::to_string(v.arity) + " has 2^" +
                               std::to_string(n) + " relations (limit 2^20)");
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) r.set_index(i, (mask >> i) & 1);
        if (!visit(r)) break;
      }
    }
    return result;
  }

  const FiniteStructure& s_;
  Mode mode_;
  const KProvider* k_;
  std::vector<std::pair<Variable, Element>> ind_;
  std::vector<std::pair<Variable, const Relation*>> rel_;
};

}  // namespace

bool eval_fo(const FiniteStructure& s, const Formula& f, const Assignment& a) {
  Evaluator ev(s, Mode::first_order, nullptr);
  ev.bind(a);
  return ev.run(f);
}

bool eval_so(const StandardModel& m, const Formula& f, const Assignment& a) {
  FreeVariables fv = free_variables(f);
  for (const auto& v : fv.relations) {
    auto it = a.relations.find(v);
    if (it == a.relations.end()) continue;
    if (!m.k || !m.k->contains(it->second)) {
      throw EvaluationError("assignment of " + to_string(v) + " := " + to_string(it->second) +
                            " lies outside K (" + (m.k ? m.k->describe() : std::string("no provider")) + ")");
    }
  }
  Evaluator ev(m.structure, Mode::standard, m.k.get());
  ev.bind(a);
  return ev.run(f);
}

bool eval_full_so(const FiniteStructure& s, const Formula& f, const Assignment& a) {
  Evaluator ev(s, Mode::full, nullptr);
  ev.bind(a);
  return ev.run(f);
}

Relation define_relation(const FiniteStructure& s, const ThetaMember& theta, const Tuple& params) {
  if (params.size() != theta.params.size()) {
    throw ArityError("theta member " + std::to_string(theta.index) + " takes " + std::to_string(theta.params.size()) +
                     " parameter(s), got " + std::to_string(params.size()));
  }
  Relation out(theta.arity(), s.domain_size);
  Assignment a;
  for (std::size_t i = 0; i < params.size(); ++i) a.individuals[theta.params[i]] = params[i];
  for (std::size_t idx = 0; idx < out.tuple_count(); ++idx) {
    Tuple d = out.decode(idx);
    for (std::size_t i = 0; i < d.size(); ++i) a.individuals[theta.slots[i]] = d[i];
    if (eval_fo(s, theta.formula, a)) out.set_index(idx);
  }
  return out;
}

Relation truth_set(const StandardModel& m, const Formula& f, std::uint32_t v, const Assignment& a) {
  FreeVariables fv = free_variables(f);
  for (const auto& x : fv.individuals) {
    if (x.index >= v && !a.individuals.count(x)) {
      throw PreconditionError("free variable " + to_string(x) + " outside the variable budget " + std::to_string(v));
    }
  }
  Relation out(v, m.structure.domain_size);
  Assignment local = a;
  for (std::size_t idx = 0; idx < out.tuple_count(); ++idx) {
    Tuple t = out.decode(idx);
    for (std::uint32_t i = 0; i < v; ++i) local.individuals[Variable::individual(i)] = t[i];
    if (eval_so(m, f, local)) out.set_index(idx);
  }
  return out;
}

}  // namespace rsol
