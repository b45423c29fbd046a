#include "rsol/calculus.hpp"

#include <algorithm>
#include <functional>

#include "rsol/error.hpp"
#include "rsol/substitution.hpp"

namespace rsol {

namespace {

using K = FormulaKind;

Formula imp(Formula a, Formula b) { return Formula::implication(std::move(a), std::move(b)); }

bool as_imp(const Formula& f, Formula& a, Formula& b) {
  BinaryView v;
  if (!match_implication(f, v)) return false;
  a = v.lhs;
  b = v.rhs;
  return true;
}

std::vector<Term> var_terms(const std::vector<Variable>& vs) {
  std::vector<Term> out;
  for (const auto& v : vs) out.push_back(Term::variable(v));
  return out;
}

std::vector<Variable> individuals(std::uint32_t n) {
  std::vector<Variable> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(Variable::individual(i));
  return out;
}

// --- parallel walks ---------------------------------------------------------

// Finds what replaced the free occurrences of `x` when `b` is `a` with x
// substituted by a single term (individuals) or variable (relations). Bound
// variables may have been renamed on the way; the caller re-checks the
// candidate by rebuilding the substitution.
class ReplacementFinder {
 public:
  explicit ReplacementFinder(Variable x) : x_(x) {}

  bool formula(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case K::predicate:
        return a.symbol() == b.symbol() && terms(a.terms(), b.terms());
      case K::equal:
        return terms(a.terms(), b.terms());
      case K::relation_apply:
        return rel(a.var(), b.var()) && terms(a.terms(), b.terms());
      case K::relation_equal:
        return rel(a.var(), b.var()) && rel(a.var2(), b.var2());
      case K::theta_apply:
        return same_var(a.var(), b.var()) && terms(a.terms(), b.terms());
      case K::negation:
        return formula(a.left(), b.left());
      case K::conjunction:
      case K::disjunction:
      case K::implication:
      case K::biconditional:
        return formula(a.left(), b.left()) && formula(a.right(), b.right());
      case K::forall:
      case K::exists: {
        if (a.var().sort != b.var().sort || a.var().arity != b.var().arity) return false;
        bound_.emplace_back(a.var(), b.var());
        bool ok = formula(a.left(), b.left());
        bound_.pop_back();
        return ok;
      }
    }
    return false;
  }

  std::optional<Term> term_found;
  std::optional<Variable> var_found;

 private:
  const Variable* lookup(const Variable& v) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (it->first == v) return &it->second;
    }
    return nullptr;
  }
  bool bound_in_b(const Variable& v) const {
    return std::any_of(bound_.begin(), bound_.end(), [&](const auto& p) { return p.second == v; });
  }
  bool same_var(const Variable& a, const Variable& b) const {
    if (const Variable* m = lookup(a)) return *m == b;
    return a == b && !bound_in_b(b);
  }
  bool open_x(const Variable& a) const { return a == x_ && !lookup(a); }

  bool terms(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!term(a[i], b[i])) return false;
    }
    return true;
  }

  bool term(const Term& a, const Term& b) {
    if (x_.is_individual() && a.kind == TermKind::variable && open_x(a.var)) {
      if (term_found) return *term_found == b;
      term_found = b;
      return true;
    }
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case TermKind::variable: return same_var(a.var, b.var);
      case TermKind::constant: return a.symbol == b.symbol;
      case TermKind::apply: return a.symbol == b.symbol && terms(a.args, b.args);
    }
    return false;
  }

  bool rel(const Variable& a, const Variable& b) {
    if (x_.is_relation() && open_x(a)) {
      if (var_found) return *var_found == b;
      var_found = b;
      return true;
    }
    return same_var(a, b);
  }

  Variable x_;
  std::vector<std::pair<Variable, Variable>> bound_;
};

// True when `b` is `a` with some free occurrences of `from` replaced by `to`,
// none of them captured by a binder of `to`.
class SomeReplaced {
 public:
  SomeReplaced(Variable from, Variable to) : from_(from), to_(to) {}

  bool formula(const Formula& a, const Formula& b, bool open) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case K::predicate:
        return a.symbol() == b.symbol() && terms(a.terms(), b.terms(), open);
      case K::equal:
        return terms(a.terms(), b.terms(), open);
      case K::relation_apply:
        return var(a.var(), b.var(), open) && terms(a.terms(), b.terms(), open);
      case K::relation_equal:
        return var(a.var(), b.var(), open) && var(a.var2(), b.var2(), open);
      case K::theta_apply:
        return var(a.var(), b.var(), false) && terms(a.terms(), b.terms(), open);
      case K::negation:
        return formula(a.left(), b.left(), open);
      case K::conjunction:
      case K::disjunction:
      case K::implication:
      case K::biconditional:
        return formula(a.left(), b.left(), open) && formula(a.right(), b.right(), open);
      case K::forall:
      case K::exists: {
        // Binders may be renamed (capture-avoiding substitution does so).
        if (a.var().sort != b.var().sort || a.var().arity != b.var().arity) return false;
        bound_.emplace_back(a.var(), b.var());
        bool ok = formula(a.left(), b.left(), open);
        bound_.pop_back();
        return ok;
      }
    }
    return false;
  }

 private:
  bool terms(const std::vector<Term>& a, const std::vector<Term>& b, bool open) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!term(a[i], b[i], open)) return false;
    }
    return true;
  }
  bool term(const Term& a, const Term& b, bool open) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case TermKind::variable: return var(a.var, b.var, open);
      case TermKind::constant: return a.symbol == b.symbol;
      case TermKind::apply: return a.symbol == b.symbol && terms(a.args, b.args, open);
    }
    return false;
  }
  bool var(const Variable& a, const Variable& b, bool open) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (it->first == a || it->second == b) return it->first == a && it->second == b;
    }
    if (a == b) return true;
    return open && a == from_ && b == to_;
  }

  Variable from_;
  Variable to_;
  std::vector<std::pair<Variable, Variable>> bound_;
};

// --- propositional skeletons ---------------------------------------------------

struct Skeleton {
  std::vector<Formula> letters;
  std::vector<Formula> keys;  // alpha-normalized letters

  Formula extract(const Formula& f) {
    switch (f.kind()) {
      case K::negation: return Formula::negation(extract(f.left()));
      case K::conjunction: return Formula::conjunction(extract(f.left()), extract(f.right()));
      default: break;
    }
    Formula key = alpha_normalize(f);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] == key) return Formula::predicate(static_cast<std::uint32_t>(i), {});
    }
    keys.push_back(key);
    letters.push_back(f);
    return Formula::predicate(static_cast<std::uint32_t>(letters.size() - 1), {});
  }
};

bool is_letter(const Formula& f) { return f.kind() == K::predicate && f.terms().empty(); }

bool skeleton_well_formed(const Formula& s, std::size_t letters) {
  switch (s.kind()) {
    case K::negation: return skeleton_well_formed(s.left(), letters);
    case K::conjunction: return skeleton_well_formed(s.left(), letters) && skeleton_well_formed(s.right(), letters);
    default: return is_letter(s) && s.symbol() < letters;
  }
}

bool eval_skeleton(const Formula& s, std::uint64_t valuation) {
  switch (s.kind()) {
    case K::negation: return !eval_skeleton(s.left(), valuation);
    case K::conjunction: return eval_skeleton(s.left(), valuation) && eval_skeleton(s.right(), valuation);
    default: return ((valuation >> s.symbol()) & 1) != 0;
  }
}

Formula fill_skeleton(const Formula& s, const std::vector<Formula>& letters) {
  switch (s.kind()) {
    case K::negation: return Formula::negation(fill_skeleton(s.left(), letters));
    case K::conjunction: return Formula::conjunction(fill_skeleton(s.left(), letters), fill_skeleton(s.right(), letters));
    default: return letters.at(s.symbol());
  }
}

constexpr std::size_t kMaxLetters = 20;

bool tautology(const Formula& skeleton, std::size_t letters) {
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << letters); ++v) {
    if (!eval_skeleton(skeleton, v)) return false;
  }
  return true;
}

// --- schema helpers -------------------------------------------------------------

Formula a1_concrete(const ThetaMember& theta) {
  FreshSupply supply;
  supply.observe(theta.formula);
  for (const auto& v : theta.slots) supply.observe(v);
  for (const auto& v : theta.params) supply.observe(v);
  Variable rel = supply.fresh_like(Variable::relation(0, theta.arity()));
  Formula body = Formula::forall(
      theta.slots, Formula::biconditional(Formula::relation_apply(rel, var_terms(theta.slots)), theta.formula));
  return Formula::forall(theta.params, Formula::exists(rel, body));
}

Formula a1_schematic(std::uint32_t arity) {
  auto slots = individuals(arity);
  Variable rel = Variable::relation(0, arity);
  Variable block = Variable::block(0);
  Formula body = Formula::forall(
      slots, Formula::biconditional(Formula::relation_apply(rel, var_terms(slots)),
                                    Formula::theta_apply(var_terms(slots), block)));
  return Formula::forall(block, Formula::exists(rel, body));
}

Formula a2_formula(std::uint32_t arity) {
  Variable m = Variable::relation(0, arity);
  Variable n = Variable::relation(1, arity);
  auto xs = individuals(arity);
  Formula ext = Formula::forall(xs, Formula::biconditional(Formula::relation_apply(m, var_terms(xs)),
                                                           Formula::relation_apply(n, var_terms(xs))));
  return Formula::forall(m, Formula::forall(n, Formula::biconditional(ext, Formula::relation_equal(m, n))));
}

Variable fresh_block(const Formula& f) {
  FreshSupply s;
  s.observe(f);
  return s.fresh_like(Variable::block(0));
}

bool theta_available(const KernelContext& ctx, std::uint32_t arity) {
  return ctx.theta && ctx.theta->supports_arity(arity);
}

// Checks every schematic atom against the template arity. An arity of 0
// means no schematic atoms are allowed.
std::optional<std::string> check_theta_atoms(const Formula& f, std::uint32_t arity) {
  switch (f.kind()) {
    case K::theta_apply:
      if (arity == 0) return "schematic atom theta[n] outside a template";
      if (f.terms().size() != arity) {
        return "theta[n] applied to " + std::to_string(f.terms().size()) + " argument(s) but the template has arity " +
               std::to_string(arity);
      }
      return std::nullopt;
    case K::negation:
      return check_theta_atoms(f.left(), arity);
    case K::forall:
    case K::exists:
      if (f.var().is_block() && arity == 0) return "parameter block quantifier outside a template";
      return check_theta_atoms(f.left(), arity);
    case K::conjunction:
    case K::disjunction:
    case K::implication:
    case K::biconditional: {
      if (auto r = check_theta_atoms(f.left(), arity)) return r;
      return check_theta_atoms(f.right(), arity);
    }
    default:
      return std::nullopt;
  }
}

std::vector<Variable> leading_foralls(Formula& f) {
  std::vector<Variable> vs;
  while (f.kind() == K::forall) {
    vs.push_back(f.var());
    f = f.left();
  }
  return vs;
}

}  // namespace

// ------------------------------------------------------------------------------

std::string to_string(Schema s) {
  switch (s) {
    case Schema::K: return "K";
    case Schema::S: return "S";
    case Schema::contra: return "contra";
    case Schema::taut: return "taut";
    case Schema::Q1: return "Q1";
    case Schema::Q2: return "Q2";
    case Schema::E1: return "E1";
    case Schema::E2: return "E2";
    case Schema::A1: return "A1";
    case Schema::A2: return "A2";
    case Schema::A3: return "A3";
    case Schema::A4: return "A4";
    case Schema::A5: return "A5";
    case Schema::A6: return "A6";
  }
  return "?";
}

std::optional<Schema> parse_schema(const std::string& name) {
  static const Schema all[] = {Schema::K,  Schema::S,  Schema::contra, Schema::taut, Schema::Q1,
                               Schema::Q2, Schema::E1, Schema::E2,     Schema::A1,   Schema::A2,
                               Schema::A3, Schema::A4, Schema::A5,     Schema::A6};
  for (Schema s : all) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

Justification Justification::premise_of(std::size_t i) {
  Justification j;
  j.rule = RuleKind::premise;
  j.premise = i;
  return j;
}

Justification Justification::axiom(Schema s, Instantiation inst) {
  Justification j;
  j.rule = RuleKind::axiom;
  j.schema = s;
  j.inst = std::move(inst);
  return j;
}

Justification Justification::mp(std::size_t minor, std::size_t major) {
  Justification j;
  j.rule = RuleKind::mp;
  j.minor = minor;
  j.major = major;
  return j;
}

Justification Justification::gen(std::size_t from, Variable v) {
  Justification j;
  j.rule = RuleKind::gen;
  j.from = from;
  j.var = v;
  return j;
}

Justification Justification::r3(std::string id) {
  Justification j;
  j.rule = RuleKind::r3;
  j.templ = std::move(id);
  return j;
}

const OmegaTemplate* Proof::find_template(const std::string& id) const {
  for (const auto& t : templates) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

KernelContext context_of(const Proof& p) {
  KernelContext ctx;
  ctx.sig = p.sig;
  ctx.theta = p.theta;
  ctx.sigma = p.sigma;
  return ctx;
}

bool same_formula(const Formula& a, const Formula& b) { return equivalent_modulo_sugar(a, b); }

std::optional<TemplateTarget> split_target(const Formula& target) {
  Formula n = normalize(target);
  Formula psi;
  Formula rhs;
  if (!as_imp(n, psi, rhs)) return std::nullopt;
  if (rhs.kind() != K::forall || !rhs.var().is_relation()) return std::nullopt;
  return TemplateTarget{psi, rhs.var(), rhs.left()};
}

// --- matching ---------------------------------------------------------------------

std::optional<Instantiation> match_schema(Schema schema, const Formula& input, const KernelContext& ctx,
                                          std::optional<std::uint64_t> theta_index, bool schematic) {
  const Formula f = normalize(input);
  Instantiation inst;
  Formula a;
  Formula b;
  switch (schema) {
    case Schema::K: {
      Formula r, b2, a2;
      if (!as_imp(f, a, r) || !as_imp(r, b2, a2) || !(a == a2)) return std::nullopt;
      inst.formulas = {a, b2};
      return inst;
    }
    case Schema::S: {
      Formula l, r, bc, c, ab, ac, a1, b1, a2, c2;
      if (!as_imp(f, l, r) || !as_imp(l, a, bc) || !as_imp(bc, b, c)) return std::nullopt;
      if (!as_imp(r, ab, ac) || !as_imp(ab, a1, b1) || !as_imp(ac, a2, c2)) return std::nullopt;
      if (!(a1 == a) || !(a2 == a) || !(b1 == b) || !(c2 == c)) return std::nullopt;
      inst.formulas = {a, b, c};
      return inst;
    }
    case Schema::contra: {
      Formula l, r, nb, na, nb2, a2, b2;
      if (!as_imp(f, l, r) || !as_imp(l, nb, na) || !as_imp(r, a2, b2)) return std::nullopt;
      Formula nb3, a3;
      if (!as_imp(a2, nb3, a3)) return std::nullopt;
      if (nb.kind() != K::negation || na.kind() != K::negation) return std::nullopt;
      if (!(nb3 == nb) || !(a3 == na.left()) || !(b2 == nb.left())) return std::nullopt;
      inst.formulas = {na.left(), nb.left()};
      return inst;
    }
    case Schema::taut: {
      Skeleton sk;
      inst.skeleton = sk.extract(f);
      if (sk.letters.size() > kMaxLetters) return std::nullopt;
      if (!tautology(inst.skeleton, sk.letters.size())) return std::nullopt;
      inst.formulas = sk.letters;
      return inst;
    }
    case Schema::Q1: {
      Formula l, r;
      if (!as_imp(f, l, r) || l.kind() != K::forall || !l.var().is_individual()) return std::nullopt;
      ReplacementFinder finder(l.var());
      if (!finder.formula(l.left(), r)) return std::nullopt;
      inst.formulas = {l.left()};
      inst.vars = {l.var()};
      inst.terms = {finder.term_found.value_or(Term::variable(l.var()))};
      return inst;
    }
    case Schema::Q2: {
      Formula l, r;
      if (!as_imp(f, l, r)) return std::nullopt;
      std::vector<Variable> vs = leading_foralls(l);
      Formula body_a, body_b, a2, rb;
      if (!as_imp(l, body_a, body_b) || !as_imp(r, a2, rb)) return std::nullopt;
      if (!(a2 == body_a)) return std::nullopt;
      for (const auto& v : vs) {
        if (v.is_relation() || rb.kind() != K::forall || !(rb.var() == v)) return std::nullopt;
        rb = rb.left();
      }
      if (!(rb == body_b)) return std::nullopt;
      inst.formulas = {body_a, body_b};
      inst.vars = vs;
      return inst;
    }
    case Schema::E1: {
      if (f.kind() != K::equal || !(f.terms()[0] == f.terms()[1])) return std::nullopt;
      inst.terms = {f.terms()[0]};
      return inst;
    }
    case Schema::E2: {
      Formula eq, r;
      if (!as_imp(f, eq, r) || eq.kind() != K::equal || !as_imp(r, a, b)) return std::nullopt;
      const Term& x = eq.terms()[0];
      const Term& y = eq.terms()[1];
      if (x.kind != TermKind::variable || y.kind != TermKind::variable) return std::nullopt;
      inst.vars = {x.var, y.var};
      inst.formulas = {a, b};
      return inst;
    }
    case Schema::A1: {
      if (schematic) {
        Formula g = f;
        if (g.kind() != K::forall || !g.var().is_block()) return std::nullopt;
        Variable v;
        Formula body;
        if (!match_exists(g.left(), v, body) || !v.is_relation()) return std::nullopt;
        inst.schematic = true;
        inst.arity = v.arity;
        return inst;
      }
      if (!ctx.theta) return std::nullopt;
      Formula g = f;
      std::size_t params = leading_foralls(g).size();
      Variable v;
      Formula body;
      if (!match_exists(g, v, body) || !v.is_relation() || !ctx.theta->supports_arity(v.arity)) return std::nullopt;
      std::uint64_t lo = theta_index.value_or(0);
      std::uint64_t hi = theta_index.value_or(ctx.search_limit);
      for (std::uint64_t n = lo; n <= hi; ++n) {
        ThetaMember t = ctx.theta->at(v.arity, n);
        if (t.params.size() != params) continue;
        if (same_formula(f, a1_concrete(t))) {
          inst.theta_index = n;
          inst.arity = v.arity;
          return inst;
        }
      }
      return std::nullopt;
    }
    case Schema::A2: {
      if (f.kind() != K::forall || !f.var().is_relation()) return std::nullopt;
      inst.arity = f.var().arity;
      return inst;
    }
    case Schema::A3: {
      if (f.kind() != K::forall || !f.var().is_relation()) return std::nullopt;
      const Formula& g = f.left();
      if (g.kind() != K::forall || !g.var().is_relation()) return std::nullopt;
      Formula eq, r;
      if (!as_imp(g.left(), eq, r) || eq.kind() != K::relation_equal || !as_imp(r, a, b)) return std::nullopt;
      if (!(eq.var() == f.var()) || !(eq.var2() == g.var())) return std::nullopt;
      inst.vars = {f.var(), g.var()};
      inst.formulas = {a, b};
      return inst;
    }
    case Schema::A4: {
      Formula l, r;
      if (!as_imp(f, l, r) || l.kind() != K::forall || !l.var().is_relation()) return std::nullopt;
      ReplacementFinder finder(l.var());
      if (!finder.formula(l.left(), r)) return std::nullopt;
      inst.formulas = {l.left()};
      inst.vars = {l.var(), finder.var_found.value_or(l.var())};
      return inst;
    }
    case Schema::A5: {
      Formula l, r, a2, rb;
      if (!as_imp(f, l, r) || l.kind() != K::forall || !l.var().is_relation()) return std::nullopt;
      if (!as_imp(l.left(), a, b) || !as_imp(r, a2, rb)) return std::nullopt;
      if (!(a2 == a) || rb.kind() != K::forall || !(rb.var() == l.var()) || !(rb.left() == b)) return std::nullopt;
      inst.formulas = {a, b};
      inst.vars = {l.var()};
      return inst;
    }
    case Schema::A6: {
      Formula l, r;
      if (!as_imp(f, l, r) || l.kind() != K::forall || !l.var().is_relation()) return std::nullopt;
      inst.formulas = {l.left()};
      inst.vars = {l.var()};
      inst.arity = l.var().arity;
      if (schematic) {
        inst.schematic = true;
        return inst;
      }
      if (!theta_available(ctx, inst.arity)) return std::nullopt;
      std::uint64_t lo = theta_index.value_or(0);
      std::uint64_t hi = theta_index.value_or(ctx.search_limit);
      for (std::uint64_t n = lo; n <= hi; ++n) {
        if (same_formula(r, a6_instantiate(l.left(), l.var(), ctx.theta->at(inst.arity, n)))) {
          inst.theta_index = n;
          return inst;
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Formula build_schema(Schema schema, const Instantiation& inst, const KernelContext& ctx) {
  auto need = [&](std::size_t formulas, std::size_t vars, std::size_t terms) {
    if (inst.formulas.size() < formulas || inst.vars.size() < vars || inst.terms.size() < terms) {
      throw PreconditionError("not an instance of " + to_string(schema) + " (instantiation data incomplete)");
    }
  };
  const auto& F = inst.formulas;
  switch (schema) {
    case Schema::K:
      need(2, 0, 0);
      return imp(F[0], imp(F[1], F[0]));
    case Schema::S:
      need(3, 0, 0);
      return imp(imp(F[0], imp(F[1], F[2])), imp(imp(F[0], F[1]), imp(F[0], F[2])));
    case Schema::contra: {
      need(2, 0, 0);
      Formula na = Formula::negation(F[0]);
      Formula nb = Formula::negation(F[1]);
      return imp(imp(nb, na), imp(imp(nb, F[0]), F[1]));
    }
    case Schema::taut:
      if (!inst.skeleton.valid() || !skeleton_well_formed(inst.skeleton, F.size())) {
        throw PreconditionError("taut instantiation has no usable skeleton");
      }
      return fill_skeleton(inst.skeleton, F);
    case Schema::Q1:
      need(1, 1, 1);
      return imp(Formula::forall(inst.vars[0], F[0]), substitute_fo(F[0], inst.vars[0], inst.terms[0]));
    case Schema::Q2:
      need(2, 0, 0);
      return imp(Formula::forall(inst.vars, imp(F[0], F[1])), imp(F[0], Formula::forall(inst.vars, F[1])));
    case Schema::E1:
      need(0, 0, 1);
      return Formula::equal(inst.terms[0], inst.terms[0]);
    case Schema::E2:
      need(2, 2, 0);
      return imp(Formula::equal(Term::variable(inst.vars[0]), Term::variable(inst.vars[1])), imp(F[0], F[1]));
    case Schema::A1:
      if (inst.schematic) return a1_schematic(inst.arity);
      if (!theta_available(ctx, inst.arity)) throw PreconditionError("A1 needs a theta family of arity " + std::to_string(inst.arity));
      return a1_concrete(ctx.theta->at(inst.arity, inst.theta_index));
    case Schema::A2:
      if (inst.arity == 0) throw PreconditionError("A2 needs an arity");
      return a2_formula(inst.arity);
    case Schema::A3:
      need(2, 2, 0);
      return Formula::forall(
          inst.vars[0],
          Formula::forall(inst.vars[1], imp(Formula::relation_equal(inst.vars[0], inst.vars[1]), imp(F[0], F[1]))));
    case Schema::A4: {
      need(1, 2, 0);
      if (inst.vars[0].arity != inst.vars[1].arity) throw PreconditionError("A4 variables differ in arity");
      return imp(Formula::forall(inst.vars[0], F[0]), substitute_so(F[0], inst.vars[0], inst.vars[1]).formula);
    }
    case Schema::A5:
      need(2, 1, 0);
      return imp(Formula::forall(inst.vars[0], imp(F[0], F[1])), imp(F[0], Formula::forall(inst.vars[0], F[1])));
    case Schema::A6: {
      need(1, 1, 0);
      const Variable& rel = inst.vars[0];
      if (inst.schematic) return imp(Formula::forall(rel, F[0]), a6_schematic(F[0], rel, fresh_block(F[0])));
      if (!theta_available(ctx, rel.arity)) {
        throw PreconditionError("A6 needs a theta family of arity " + std::to_string(rel.arity));
      }
      return imp(Formula::forall(rel, F[0]), a6_instantiate(F[0], rel, ctx.theta->at(rel.arity, inst.theta_index)));
    }
  }
  throw PreconditionError("unknown schema");
}

std::optional<std::string> check_axiom(const Formula& f, Schema schema, const Instantiation& inst,
                                       const KernelContext& ctx, std::uint32_t template_arity) {
  if (auto r = check_theta_atoms(f, template_arity)) return r;
  if (inst.schematic && template_arity == 0) return to_string(schema) + "(n) used outside a template";
  if (inst.schematic && inst.arity != template_arity) return "schematic axiom arity differs from the template arity";
  Formula expected;
  try {
    expected = build_schema(schema, inst, ctx);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  if (!same_formula(f, expected)) return "not the " + to_string(schema) + " instance recorded for this line";
  const auto& F = inst.formulas;
  switch (schema) {
    case Schema::taut:
      if (F.size() > kMaxLetters) return "too many propositional letters for a truth-table check";
      if (!tautology(inst.skeleton, F.size())) return "skeleton is not a tautology";
      break;
    case Schema::Q2:
      for (const auto& v : inst.vars) {
        if (v.is_relation()) return "Q2 quantifies individuals or parameter blocks only";
        if (occurs_free(F[0], v)) return to_string(v) + " is free in the antecedent";
      }
      break;
    case Schema::E1:
      if (!ctx.sig.identity) return "identity axioms are disabled for this signature";
      break;
    case Schema::E2:
      if (!ctx.sig.identity) return "identity axioms are disabled for this signature";
      if (!inst.vars[0].is_individual() || !inst.vars[1].is_individual()) return "E2 relates individual variables";
      if (!SomeReplaced(inst.vars[0], inst.vars[1]).formula(normalize(F[0]), normalize(F[1]), true)) {
        return "consequent does not replace free occurrences of the left variable";
      }
      break;
    case Schema::A2:
      if (!ctx.sig.identity) return "second-order identity is disabled for this signature";
      break;
    case Schema::A3:
      if (!ctx.sig.identity) return "second-order identity is disabled for this signature";
      if (inst.vars[0].arity != inst.vars[1].arity) return "A3 variables differ in arity";
      if (!SomeReplaced(inst.vars[0], inst.vars[1]).formula(normalize(F[0]), normalize(F[1]), true)) {
        return "consequent does not replace free occurrences of " + to_string(inst.vars[0]);
      }
      break;
    case Schema::A5:
      if (!inst.vars[0].is_relation()) return "A5 quantifies a second-order variable";
      if (occurs_free(F[0], inst.vars[0])) return to_string(inst.vars[0]) + " is free in the antecedent";
      break;
    default:
      break;
  }
  return std::nullopt;
}

std::optional<AxiomMatch> recognize_axiom(const Formula& f, const KernelContext& ctx) {
  static const Schema order[] = {Schema::A1, Schema::A2, Schema::A3, Schema::A4, Schema::A5,
                                 Schema::A6, Schema::K,  Schema::S,  Schema::contra, Schema::Q1,
                                 Schema::Q2, Schema::E1, Schema::E2, Schema::taut};
  for (Schema s : order) {
    auto inst = match_schema(s, f, ctx);
    if (!inst) continue;
    if (!check_axiom(f, s, *inst, ctx)) return AxiomMatch{s, *inst};
  }
  return std::nullopt;
}

// --- proofs -------------------------------------------------------------------------

namespace {

CheckResult reject(std::size_t line, std::string reason, std::string templ = {}) {
  CheckResult r;
  r.accepted = false;
  r.line = line;
  r.reason = std::move(reason);
  r.template_id = std::move(templ);
  return r;
}

std::optional<std::string> wellformed(const Formula& f, const Signature& sig) {
  try {
    check_against(f, sig);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

// Checks lines shared by proofs and templates; R3 lines are handled by the
// caller through `r3`.
std::optional<std::string> check_line(const std::vector<ProofLine>& lines, std::size_t k, const KernelContext& ctx,
                                      std::uint32_t template_arity,
                                      const std::function<std::optional<std::string>(const ProofLine&)>& r3) {
  const ProofLine& line = lines[k];
  if (!line.formula.valid()) return "empty formula";
  if (auto w = wellformed(line.formula, ctx.sig)) return w;
  if (auto t = check_theta_atoms(line.formula, template_arity)) return t;
  const Justification& j = line.just;
  switch (j.rule) {
    case RuleKind::premise:
      if (j.premise >= ctx.sigma.size()) return "premise " + std::to_string(j.premise + 1) + " does not exist";
      if (!same_formula(line.formula, ctx.sigma[j.premise])) {
        return "formula differs from premise " + std::to_string(j.premise + 1);
      }
      return std::nullopt;
    case RuleKind::axiom:
      return check_axiom(line.formula, j.schema, j.inst, ctx, template_arity);
    case RuleKind::mp:
      if (j.minor >= k || j.major >= k) return "forward reference";
      if (!same_formula(lines[j.major].formula, imp(lines[j.minor].formula, line.formula))) {
        return "MP: line " + std::to_string(j.major + 1) + " is not line " + std::to_string(j.minor + 1) +
               " -> this line";
      }
      return std::nullopt;
    case RuleKind::gen:
      if (j.from >= k) return "forward reference";
      if (j.var.is_block() && template_arity == 0) return "generalization over a parameter block outside a template";
      if (!same_formula(line.formula, Formula::forall(j.var, lines[j.from].formula))) {
        return "Gen: not the generalization of line " + std::to_string(j.from + 1) + " over " + to_string(j.var);
      }
      return std::nullopt;
    case RuleKind::r3:
      return r3(line);
  }
  return "unknown justification";
}

}  // namespace

CheckResult check_template(const OmegaTemplate& t, const KernelContext& ctx) {
  auto target = split_target(t.target);
  if (!target) return reject(0, "template target must have the form psi -> forall V phi", t.id);
  if (mentions_theta(t.target)) return reject(0, "template target may not mention theta[n]", t.id);
  if (!ctx.theta) return reject(0, "R3 templates need a theta family", t.id);
  const std::uint32_t arity = target->rel.arity;
  if (!ctx.theta->supports_arity(arity)) {
    return reject(0, "family " + ctx.theta->name() + " has no members of arity " + std::to_string(arity), t.id);
  }
  if (t.lines.empty()) return reject(0, "empty template", t.id);
  auto no_r3 = [](const ProofLine&) -> std::optional<std::string> { return "R3 inside a template"; };
  for (std::size_t k = 0; k < t.lines.size(); ++k) {
    if (auto r = check_line(t.lines, k, ctx, arity, no_r3)) return reject(k, *r, t.id);
  }
  Formula want = imp(target->psi, a6_schematic(target->phi, target->rel, fresh_block(target->phi)));
  if (!same_formula(t.lines.back().formula, want)) {
    return reject(t.lines.size() - 1, "last line is not psi -> phi^m_n for the template target", t.id);
  }
  CheckResult ok;
  ok.accepted = true;
  ok.template_id = t.id;
  return ok;
}

CheckResult check_proof(const Proof& p) {
  KernelContext ctx = context_of(p);
  for (std::size_t i = 0; i < p.sigma.size(); ++i) {
    if (!is_sentence(p.sigma[i])) {
      CheckResult r;
      r.reason = "premise " + std::to_string(i + 1) + " is not a sentence";
      return r;
    }
    if (auto w = wellformed(p.sigma[i], p.sig)) {
      CheckResult r;
      r.reason = "premise " + std::to_string(i + 1) + ": " + *w;
      return r;
    }
  }
  std::map<std::string, CheckResult> templates;
  for (const auto& t : p.templates) {
    if (templates.count(t.id)) {
      CheckResult r;
      r.reason = "duplicate template id " + t.id;
      r.template_id = t.id;
      return r;
    }
    templates.emplace(t.id, check_template(t, ctx));
  }
  if (p.lines.empty()) {
    CheckResult r;
    r.reason = "empty proof";
    return r;
  }
  auto r3 = [&](const ProofLine& line) -> std::optional<std::string> {
    auto it = templates.find(line.just.templ);
    if (it == templates.end()) return "R3 cites unknown template " + line.just.templ;
    if (!it->second.accepted) {
      std::string where = it->second.line ? "line " + std::to_string(*it->second.line + 1) + ": " : "";
      return "R3 cites unchecked template " + line.just.templ + " (" + where + it->second.reason + ")";
    }
    const OmegaTemplate* t = p.find_template(line.just.templ);
    if (!same_formula(line.formula, t->target)) return "R3 conclusion differs from the target of " + t->id;
    return std::nullopt;
  };
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    if (auto r = check_line(p.lines, k, ctx, 0, r3)) return reject(k, *r);
  }
  if (p.goal && !same_formula(p.lines.back().formula, *p.goal)) {
    return reject(p.lines.size() - 1, "last line is not the declared goal");
  }
  CheckResult ok;
  ok.accepted = true;
  return ok;
}

// --- template instances ------------------------------------------------------------

namespace {

class TemplateInstantiator {
 public:
  TemplateInstantiator(const OmegaTemplate& t, const KernelContext& ctx, std::uint64_t n, std::uint32_t arity)
      : theta_(ctx.theta->at(arity, n)) {
    supply_.observe(t.target);
    for (const auto& l : t.lines) supply_.observe(l.formula);
    for (const auto& s : ctx.sigma) supply_.observe(s);
  }

  const std::vector<Variable>& params(const Variable& block) {
    auto it = blocks_.find(block);
    if (it != blocks_.end()) return it->second;
    std::vector<Variable> ps;
    for (std::size_t i = 0; i < theta_.params.size(); ++i) ps.push_back(supply_.fresh_like(Variable::individual(0)));
    return blocks_.emplace(block, std::move(ps)).first->second;
  }

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case K::theta_apply: return instantiate_theta(theta_, f.terms(), params(f.var()));
      case K::negation: return Formula::negation(run(f.left()));
      case K::conjunction: return Formula::conjunction(run(f.left()), run(f.right()));
      case K::disjunction: return Formula::disjunction(run(f.left()), run(f.right()));
      case K::implication: return Formula::implication(run(f.left()), run(f.right()));
      case K::biconditional: return Formula::biconditional(run(f.left()), run(f.right()));
      case K::forall:
        if (f.var().is_block()) return Formula::forall(params(f.var()), run(f.left()));
        return Formula::forall(f.var(), run(f.left()));
      case K::exists:
        if (f.var().is_block()) {
          Formula body = run(f.left());
          const auto& ps = params(f.var());
          for (auto it = ps.rbegin(); it != ps.rend(); ++it) body = Formula::exists(*it, body);
          return body;
        }
        return Formula::exists(f.var(), run(f.left()));
      default:
        return f;
    }
  }

 private:
  ThetaMember theta_;
  FreshSupply supply_;
  std::map<Variable, std::vector<Variable>> blocks_;
};

}  // namespace

Proof instantiate_template(const OmegaTemplate& t, const KernelContext& ctx, std::uint64_t n) {
  auto target = split_target(t.target);
  if (!target) throw PreconditionError("template " + t.id + " has a malformed target");
  if (!ctx.theta) throw PreconditionError("template instances need a theta family");
  TemplateInstantiator inst(t, ctx, n, target->rel.arity);
  Proof out;
  out.sig = ctx.sig;
  out.theta = ctx.theta;
  out.sigma = ctx.sigma;
  std::vector<std::size_t> where(t.lines.size());
  for (std::size_t k = 0; k < t.lines.size(); ++k) {
    const ProofLine& line = t.lines[k];
    Formula f = inst.run(line.formula);
    Justification j = line.just;
    switch (j.rule) {
      case RuleKind::axiom: {
        auto found = match_schema(j.schema, f, ctx, j.inst.schematic ? std::optional<std::uint64_t>(n) : std::nullopt);
        j.inst = found.value_or(Instantiation{});
        break;
      }
      case RuleKind::mp:
        j.minor = j.minor < k ? where[j.minor] : j.minor;
        j.major = j.major < k ? where[j.major] : j.major;
        break;
      case RuleKind::gen:
        if (j.var.is_block() && j.from < k) {
          // One generalization per parameter, innermost first.
          const auto& ps = inst.params(j.var);
          std::size_t prev = where[j.from];
          Formula body = out.lines[prev].formula;
          for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
            body = Formula::forall(*it, body);
            out.lines.push_back({body, Justification::gen(prev, *it)});
            prev = out.lines.size() - 1;
          }
          where[k] = prev;
          continue;
        }
        j.from = j.from < k ? where[j.from] : j.from;
        break;
      default:
        break;
    }
    out.lines.push_back({f, j});
    where[k] = out.lines.size() - 1;
  }
  out.goal = imp(target->psi, a6_instantiate(target->phi, target->rel, ctx.theta->at(target->rel.arity, n)));
  return out;
}

SpotCheck spot_check_template(const OmegaTemplate& t, const KernelContext& ctx, std::uint64_t bound) {
  SpotCheck out;
  for (std::uint64_t n = 0; n <= bound; ++n) {
    Proof p;
    try {
      p = instantiate_template(t, ctx, n);
    } catch (const Error& e) {
      out.failing_n = n;
      out.reason = e.what();
      return out;
    }
    CheckResult r = check_proof(p);
    ++out.checked;
    if (!r.accepted) {
      out.failing_n = n;
      out.reason = "instance " + std::to_string(n) + (r.line ? " line " + std::to_string(*r.line + 1) : "") + ": " +
                   r.reason;
      return out;
    }
  }
  out.passed = true;
  out.reason = "evidence(" + std::to_string(bound) + ")";
  return out;
}

}  // namespace rsol
