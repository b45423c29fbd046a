#include "rsol/truth_algebra.hpp"

#include <optional>

#include "rsol/error.hpp"
#include "rsol/substitution.hpp"

namespace rsol {

namespace {

std::uint64_t tuple_space(std::uint32_t domain, std::uint32_t v) {
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < v; ++i) {
    n *= domain;
    if (n > (std::uint64_t{1} << 20)) throw FeasibilityError("truth algebra over more than 2^20 assignments");
  }
  return n;
}

// The same model with one new constant naming each element; returns the
// index of the constant for element 0.
StandardModel with_names(const StandardModel& m, std::uint32_t* first) {
  StandardModel out = m;
  out.structure.sig = m.structure.sig.with_extra_constants(m.structure.domain_size, first);
  for (Element a = 0; a < m.structure.domain_size; ++a) out.structure.constants.push_back(a);
  return out;
}

void require_only_relation(const Formula& phi, const std::optional<Variable>& var) {
  for (const auto& r : free_variables(phi).relations) {
    if (!var) throw PreconditionError("formula has free relation variable " + to_string(r));
    if (r != *var) throw PreconditionError("formula has free relation variable " + to_string(r) + " besides " + to_string(*var));
  }
}

}  // namespace

TruthAlgebra::TruthAlgebra(StandardModel model, std::uint32_t v)
    : model_(std::move(model)),
      v_(v),
      alg_(static_cast<std::uint32_t>(tuple_space(model_.structure.domain_size, v))) {}

TruthAlgebra::Element TruthAlgebra::class_of(const Formula& f, const Assignment& a) const {
  return truth_set(model_, f, v_, a).bits();
}

bool TruthAlgebra::leq(const Formula& f, const Formula& g) const {
  return rsol::leq(alg_, class_of(f), class_of(g));
}

LemmaItem parse_lemma_item(const std::string& text) {
  static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi"};
  for (int k = 0; k < 6; ++k) {
    if (text == names[k]) return static_cast<LemmaItem>(k + 1);
  }
  throw ParseError(ParseErrorKind::syntax, 0, "lemma item must be one of i, ii, iii, iv, v, vi");
}

std::string to_string(LemmaItem item) {
  static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi"};
  return names[static_cast<int>(item) - 1];
}

LemmaCheck lemma_reg_check(const FiniteStructure& s, std::uint32_t v, const Formula& phi, const Variable& var,
                           LemmaItem item, const ThetaFamilyPtr& fam, std::uint64_t bound) {
  StandardModel model = make_model(s, bounded_provider(s, fam, bound));
  TruthAlgebra ta(model, v);
  const PowersetAlgebra& alg = ta.algebra();
  const bool universal = item == LemmaItem::i || item == LemmaItem::iii || item == LemmaItem::v;
  const Formula body = normalize(phi);
  LemmaCheck out;

  auto fold = [&](const TruthAlgebra::Element& acc, const TruthAlgebra::Element& x) {
    return universal ? alg.meet(acc, x) : alg.join(acc, x);
  };
  TruthAlgebra::Element rhs = universal ? alg.one() : alg.zero();
  Formula quantified = universal ? Formula::forall(var, body) : Formula::exists(var, body);

  switch (item) {
    case LemmaItem::i:
    case LemmaItem::ii: {
      if (!var.is_individual()) throw ArityError("items (i) and (ii) quantify an individual variable");
      require_only_relation(body, std::nullopt);
      std::uint32_t first = 0;
      StandardModel named = with_names(model, &first);
      TruthAlgebra nta(named, v);
      for (Element a = 0; a < s.domain_size; ++a) {
        Formula inst = substitute_fo(body, var, Term::constant(first + a));
        rhs = fold(rhs, nta.class_of(inst));
        ++out.instances;
      }
      break;
    }
    case LemmaItem::iii:
    case LemmaItem::iv: {
      if (!var.is_relation()) throw ArityError("items (iii) and (iv) quantify a relation variable");
      require_only_relation(body, var);
      for (const Relation& b : model.range(var.arity)) {
        Assignment a;
        a.relations[var] = b;
        rhs = fold(rhs, ta.class_of(body, a));
        ++out.instances;
      }
      break;
    }
    case LemmaItem::v:
    case LemmaItem::vi: {
      if (!var.is_relation()) throw ArityError("items (v) and (vi) quantify a relation variable");
      require_only_relation(body, var);
      if (!fam->supports_arity(var.arity)) {
        throw ArityError("family " + fam->name() + " has no members of arity " + std::to_string(var.arity));
      }
      for (std::uint64_t n = 0; n <= bound; ++n) {
        ThetaMember theta = fam->at(var.arity, n);
        Formula inst = universal ? a6_instantiate(body, var, theta)
                                 : Formula::negation(a6_instantiate(Formula::negation(body), var, theta));
        rhs = fold(rhs, ta.class_of(inst));
        ++out.instances;
      }
      break;
    }
  }
  TruthAlgebra::Element lhs = ta.class_of(quantified);
  out.holds = alg.equal(lhs, rhs);
  out.lhs = alg.format(lhs);
  out.rhs = alg.format(rhs);
  return out;
}

std::vector<RegularEntry<TruthAlgebra::Element>> instance_family(const TruthAlgebra& ta,
                                                                 const std::vector<Formula>& formulas) {
  using E = TruthAlgebra::Element;
  const PowersetAlgebra& alg = ta.algebra();
  const StandardModel& model = ta.model();
  std::uint32_t first = 0;
  TruthAlgebra named(with_names(model, &first), ta.variables());
  std::vector<RegularEntry<E>> out;

  auto emit = [&](const std::string& label, std::vector<E> members, const Formula& all, const Formula& some) {
    E meet = alg.one();
    E join = alg.zero();
    for (const auto& m : members) {
      meet = alg.meet(meet, m);
      join = alg.join(join, m);
    }
    // Bounds come from the quantified formulas; the folds are kept only to
    // fail loudly if the two ever disagree.
    E forall_class = ta.class_of(all);
    E exists_class = ta.class_of(some);
    if (!alg.equal(meet, forall_class) || !alg.equal(join, exists_class)) {
      throw EvaluationError("instance family: quantifier class differs from the instance fold for " + label);
    }
    out.push_back(finite_entry(EntryKind::meet, members, forall_class, "meet " + label));
    out.push_back(finite_entry(EntryKind::join, std::move(members), exists_class, "join " + label));
  };

  for (std::size_t k = 0; k < formulas.size(); ++k) {
    Formula psi = normalize(formulas[k]);
    FreeVariables fv = free_variables(psi);
    if (fv.relations.empty()) {
      for (const auto& x : fv.individuals) {
        if (x.index >= ta.variables()) continue;
        std::vector<E> members;
        for (Element a = 0; a < model.structure.domain_size; ++a) {
          members.push_back(named.class_of(substitute_fo(psi, x, Term::constant(first + a))));
        }
        emit("#" + std::to_string(k) + " over " + to_string(x), std::move(members), Formula::forall(x, psi),
             Formula::exists(x, psi));
      }
    } else if (fv.relations.size() == 1) {
      Variable rel = *fv.relations.begin();
      std::vector<E> members;
      for (const Relation& b : model.range(rel.arity)) {
        Assignment a;
        a.relations[rel] = b;
        members.push_back(ta.class_of(psi, a));
      }
      emit("#" + std::to_string(k) + " over " + to_string(rel), std::move(members), Formula::forall(rel, psi),
           Formula::exists(rel, psi));
    }
  }
  return out;
}

}  // namespace rsol
