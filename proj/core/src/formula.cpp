#include "rsol/formula.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "rsol/error.hpp"

namespace rsol {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::lexical: return "lexical error";
    case ParseErrorKind::syntax: return "syntax error";
    case ParseErrorKind::arity_mismatch: return "arity mismatch";
    case ParseErrorKind::unknown_symbol: return "unknown symbol";
    case ParseErrorKind::identity_disabled: return "identity disabled";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t position, const std::string& message,
                       std::size_t line)
    : Error(std::string(to_string(kind)) + (line ? " at line " + std::to_string(line) : "") +
            " at offset " + std::to_string(position) + ": " + message),
      kind_(kind),
      position_(position),
      line_(line) {}

// ---------------------------------------------------------------------------
// Signature

void Signature::validate() const {
  for (std::size_t i = 0; i < predicate_arities.size(); ++i) {
    if (predicate_arities[i] == 0) {
      throw PreconditionError("predicate P" + std::to_string(i) + " must have arity >= 1");
    }
  }
  for (std::size_t i = 0; i < function_arities.size(); ++i) {
    if (function_arities[i] == 0) {
      throw PreconditionError("function f" + std::to_string(i) +
                              " must have arity >= 1 (declare constants with cN)");
    }
  }
}

Signature Signature::with_extra_constants(std::uint32_t count, std::uint32_t* first_index) const {
  Signature out = *this;
  if (first_index) *first_index = constant_count;
  out.constant_count += count;
  return out;
}

Signature parse_signature(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  std::string tok;
  std::map<std::uint32_t, std::uint32_t> preds;
  std::map<std::uint32_t, std::uint32_t> funcs;
  auto fail = [&](const std::string& msg) {
    throw ParseError(ParseErrorKind::syntax, 0, "signature: " + msg + " in '" + text + "'");
  };
  auto number = [&](const std::string& s) -> std::uint32_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      fail("expected a number, got '" + s + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(s));
  };
  while (in >> tok) {
    if (!tok.empty() && tok.back() == ',') tok.pop_back();
    if (tok.empty()) continue;
    if (tok == "-identity" || tok == "noidentity") {
      sig.identity = false;
    } else if (tok == "+identity" || tok == "identity") {
      sig.identity = true;
    } else if (tok[0] == 'P' || tok[0] == 'f') {
      auto slash = tok.find('/');
      if (slash == std::string::npos) fail("missing '/arity' in '" + tok + "'");
      auto idx = number(tok.substr(1, slash - 1));
      auto ar = number(tok.substr(slash + 1));
      (tok[0] == 'P' ? preds : funcs)[idx] = ar;
    } else if (tok[0] == 'c') {
      sig.constant_count = std::max(sig.constant_count, number(tok.substr(1)));
    } else {
      fail("unexpected token '" + tok + "'");
    }
  }
  auto flatten = [&](const std::map<std::uint32_t, std::uint32_t>& m, const char* what) {
    std::vector<std::uint32_t> out;
    for (const auto& [idx, ar] : m) {
      if (idx != out.size()) fail(std::string(what) + " indices must be contiguous from 0");
      out.push_back(ar);
    }
    return out;
  };
  sig.predicate_arities = flatten(preds, "predicate");
  sig.function_arities = flatten(funcs, "function");
  sig.validate();
  return sig;
}

std::string to_string(const Signature& sig) {
  std::ostringstream out;
  const char* sep = "";
  for (std::size_t i = 0; i < sig.predicate_arities.size(); ++i) {
    out << sep << 'P' << i << '/' << sig.predicate_arities[i];
    sep = " ";
  }
  for (std::size_t i = 0; i < sig.function_arities.size(); ++i) {
    out << sep << 'f' << i << '/' << sig.function_arities[i];
    sep = " ";
  }
  if (sig.constant_count) {
    out << sep << 'c' << sig.constant_count;
    sep = " ";
  }
  if (!sig.identity) out << sep << "-identity";
  return out.str();
}

// ---------------------------------------------------------------------------
// Variables and terms

Variable Variable::relation(std::uint32_t index, std::uint32_t arity) {
  if (arity == 0) throw ArityError("second-order variables need arity >= 1");
  return {Sort::relation, index, arity};
}

std::string to_string(const Variable& v) {
  switch (v.sort) {
    case Sort::individual: return "x" + std::to_string(v.index);
    case Sort::relation:
      return "X" + std::to_string(v.index) + (v.arity == 1 ? "" : "^" + std::to_string(v.arity));
    case Sort::block: return "ys" + std::to_string(v.index);
  }
  return "?";
}

Term Term::variable(Variable v) {
  if (!v.is_individual()) throw ArityError("terms may only contain first-order variables");
  Term t;
  t.kind = TermKind::variable;
  t.var = v;
  return t;
}

Term Term::constant(std::uint32_t index) {
  Term t;
  t.kind = TermKind::constant;
  t.symbol = index;
  return t;
}

Term Term::apply(std::uint32_t function, std::vector<Term> args) {
  Term t;
  t.kind = TermKind::apply;
  t.symbol = function;
  t.args = std::move(args);
  return t;
}

void collect_variables(const Term& t, std::set<Variable>& out) {
  switch (t.kind) {
    case TermKind::variable: out.insert(t.var); break;
    case TermKind::constant: break;
    case TermKind::apply:
      for (const auto& a : t.args) collect_variables(a, out);
      break;
  }
}

// ---------------------------------------------------------------------------
// Formula construction

Formula Formula::from_node(FormulaNode node) {
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

Formula Formula::predicate(std::uint32_t symbol, std::vector<Term> args) {
  FormulaNode n;
  n.kind = FormulaKind::predicate;
  n.symbol = symbol;
  n.terms = std::move(args);
  return from_node(std::move(n));
}

Formula Formula::equal(Term lhs, Term rhs) {
  FormulaNode n;
  n.kind = FormulaKind::equal;
  n.terms.reserve(2);
  n.terms.push_back(std::move(lhs));
  n.terms.push_back(std::move(rhs));
  return from_node(std::move(n));
}

Formula Formula::relation_apply(Variable rel, std::vector<Term> args) {
  if (!rel.is_relation()) throw ArityError("relation application needs a second-order variable");
  if (args.size() != rel.arity) {
    throw ArityError(to_string(rel) + " has arity " + std::to_string(rel.arity) + " but is applied to " +
                     std::to_string(args.size()) + " argument(s)");
  }
  FormulaNode n;
  n.kind = FormulaKind::relation_apply;
  n.var = rel;
  n.terms = std::move(args);
  return from_node(std::move(n));
}

Formula Formula::relation_equal(Variable lhs, Variable rhs) {
  if (!lhs.is_relation() || !rhs.is_relation()) {
    throw ArityError("second-order identity needs two second-order variables");
  }
  if (lhs.arity != rhs.arity) {
    throw ArityError("second-order identity between " + to_string(lhs) + " and " + to_string(rhs) +
                     " of different arities");
  }
  FormulaNode n;
  n.kind = FormulaKind::relation_equal;
  n.var = lhs;
  n.var2 = rhs;
  return from_node(std::move(n));
}

Formula Formula::theta_apply(std::vector<Term> slots, Variable block) {
  if (!block.is_block()) throw ArityError("theta atoms take a parameter block variable");
  if (slots.empty()) throw ArityError("theta atoms need at least one slot");
  FormulaNode n;
  n.kind = FormulaKind::theta_apply;
  n.terms = std::move(slots);
  n.var = block;
  return from_node(std::move(n));
}

Formula Formula::negation(Formula f) {
  FormulaNode n;
  n.kind = FormulaKind::negation;
  n.left = std::move(f);
  return from_node(std::move(n));
}

namespace {

FormulaNode binary_node(FormulaKind kind, Formula a, Formula b) {
  FormulaNode n;
  n.kind = kind;
  n.left = std::move(a);
  n.right = std::move(b);
  return n;
}

FormulaNode quantifier_node(FormulaKind kind, Variable v, Formula body) {
  FormulaNode n;
  n.kind = kind;
  n.var = v;
  n.left = std::move(body);
  return n;
}

}  // namespace

Formula Formula::conjunction(Formula a, Formula b) {
  return from_node(binary_node(FormulaKind::conjunction, std::move(a), std::move(b)));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return from_node(binary_node(FormulaKind::disjunction, std::move(a), std::move(b)));
}
Formula Formula::implication(Formula a, Formula b) {
  return from_node(binary_node(FormulaKind::implication, std::move(a), std::move(b)));
}
Formula Formula::biconditional(Formula a, Formula b) {
  return from_node(binary_node(FormulaKind::biconditional, std::move(a), std::move(b)));
}
Formula Formula::forall(Variable v, Formula body) {
  return from_node(quantifier_node(FormulaKind::forall, v, std::move(body)));
}
Formula Formula::exists(Variable v, Formula body) {
  return from_node(quantifier_node(FormulaKind::exists, v, std::move(body)));
}

Formula Formula::forall(const std::vector<Variable>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

Formula Formula::conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) throw PreconditionError("empty conjunction");
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = conjunction(out, fs[i]);
  return out;
}

Formula Formula::disjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) throw PreconditionError("empty disjunction");
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = disjunction(out, fs[i]);
  return out;
}

FormulaKind Formula::kind() const { return node_->kind; }
std::uint32_t Formula::symbol() const { return node_->symbol; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const Variable& Formula::var() const { return node_->var; }
const Variable& Formula::var2() const { return node_->var2; }
const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }

bool Formula::is_atomic() const {
  switch (kind()) {
    case FormulaKind::predicate:
    case FormulaKind::equal:
    case FormulaKind::relation_apply:
    case FormulaKind::relation_equal:
    case FormulaKind::theta_apply:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case FormulaKind::predicate:
      return x.symbol == y.symbol && x.terms == y.terms;
    case FormulaKind::equal:
      return x.terms == y.terms;
    case FormulaKind::relation_apply:
    case FormulaKind::theta_apply:
      return x.var == y.var && x.terms == y.terms;
    case FormulaKind::relation_equal:
      return x.var == y.var && x.var2 == y.var2;
    case FormulaKind::negation:
      return x.left == y.left;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication:
    case FormulaKind::biconditional:
      return x.left == y.left && x.right == y.right;
    case FormulaKind::forall:
    case FormulaKind::exists:
      return x.var == y.var && x.left == y.left;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Free variables

bool FreeVariables::contains(const Variable& v) const {
  switch (v.sort) {
    case Sort::individual: return individuals.count(v) != 0;
    case Sort::relation: return relations.count(v) != 0;
    case Sort::block: return blocks.count(v) != 0;
  }
  return false;
}

namespace {

void insert_free(FreeVariables& out, const Variable& v) {
  switch (v.sort) {
    case Sort::individual: out.individuals.insert(v); break;
    case Sort::relation: out.relations.insert(v); break;
    case Sort::block: out.blocks.insert(v); break;
  }
}

void erase_free(FreeVariables& out, const Variable& v) {
  switch (v.sort) {
    case Sort::individual: out.individuals.erase(v); break;
    case Sort::relation: out.relations.erase(v); break;
    case Sort::block: out.blocks.erase(v); break;
  }
}

void free_vars_into(const Formula& f, FreeVariables& out) {
  switch (f.kind()) {
    case FormulaKind::predicate:
    case FormulaKind::equal: {
      std::set<Variable> vs;
      for (const auto& t : f.terms()) collect_variables(t, vs);
      out.individuals.insert(vs.begin(), vs.end());
      break;
    }
    case FormulaKind::relation_apply:
    case FormulaKind::theta_apply: {
      std::set<Variable> vs;
      for (const auto& t : f.terms()) collect_variables(t, vs);
      out.individuals.insert(vs.begin(), vs.end());
      insert_free(out, f.var());
      break;
    }
    case FormulaKind::relation_equal:
      out.relations.insert(f.var());
      out.relations.insert(f.var2());
      break;
    case FormulaKind::negation:
      free_vars_into(f.left(), out);
      break;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication:
    case FormulaKind::biconditional:
      free_vars_into(f.left(), out);
      free_vars_into(f.right(), out);
      break;
    case FormulaKind::forall:
    case FormulaKind::exists: {
      FreeVariables inner;
      free_vars_into(f.left(), inner);
      erase_free(inner, f.var());
      out.individuals.insert(inner.individuals.begin(), inner.individuals.end());
      out.relations.insert(inner.relations.begin(), inner.relations.end());
      out.blocks.insert(inner.blocks.begin(), inner.blocks.end());
      break;
    }
  }
}

}  // namespace

FreeVariables free_variables(const Formula& f) {
  FreeVariables out;
  free_vars_into(f, out);
  return out;
}

bool occurs_free(const Formula& f, const Variable& v) { return free_variables(f).contains(v); }

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

void collect_variables(const Formula& f, std::set<Variable>& out) {
  switch (f.kind()) {
    case FormulaKind::predicate:
    case FormulaKind::equal:
      for (const auto& t : f.terms()) collect_variables(t, out);
      break;
    case FormulaKind::relation_apply:
    case FormulaKind::theta_apply:
      for (const auto& t : f.terms()) collect_variables(t, out);
      out.insert(f.var());
      break;
    case FormulaKind::relation_equal:
      out.insert(f.var());
      out.insert(f.var2());
      break;
    case FormulaKind::negation:
      collect_variables(f.left(), out);
      break;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication:
    case FormulaKind::biconditional:
      collect_variables(f.left(), out);
      collect_variables(f.right(), out);
      break;
    case FormulaKind::forall:
    case FormulaKind::exists:
      out.insert(f.var());
      collect_variables(f.left(), out);
      break;
  }
}

void FreshSupply::observe(const Variable& v) {
  switch (v.sort) {
    case Sort::individual: individual = std::max(individual, v.index + 1); break;
    case Sort::relation: relation = std::max(relation, v.index + 1); break;
    case Sort::block: block = std::max(block, v.index + 1); break;
  }
}

void FreshSupply::observe(const Term& t) {
  std::set<Variable> vs;
  collect_variables(t, vs);
  for (const auto& v : vs) observe(v);
}

void FreshSupply::observe(const Formula& f) {
  std::set<Variable> vs;
  collect_variables(f, vs);
  for (const auto& v : vs) observe(v);
}

Variable FreshSupply::fresh_like(const Variable& v) {
  switch (v.sort) {
    case Sort::individual: return Variable::individual(individual++);
    case Sort::relation: return Variable::relation(relation++, v.arity);
    case Sort::block: return Variable::block(block++);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Normalization and alpha-equivalence

Formula normalize(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::predicate:
    case K::equal:
    case K::relation_apply:
    case K::relation_equal:
    case K::theta_apply:
      return f;
    case K::negation: {
      Formula inner = normalize(f.left());
      return inner == f.left() ? f : Formula::negation(inner);
    }
    case K::conjunction: {
      Formula a = normalize(f.left());
      Formula b = normalize(f.right());
      return (a == f.left() && b == f.right()) ? f : Formula::conjunction(a, b);
    }
    case K::disjunction:
      return Formula::negation(Formula::conjunction(Formula::negation(normalize(f.left())),
                                                    Formula::negation(normalize(f.right()))));
    case K::implication:
      return Formula::negation(
          Formula::conjunction(normalize(f.left()), Formula::negation(normalize(f.right()))));
    case K::biconditional: {
      Formula a = normalize(f.left());
      Formula b = normalize(f.right());
      auto imp = [](const Formula& p, const Formula& q) {
        return Formula::negation(Formula::conjunction(p, Formula::negation(q)));
      };
      return Formula::conjunction(imp(a, b), imp(b, a));
    }
    case K::forall: {
      Formula body = normalize(f.left());
      return body == f.left() ? f : Formula::forall(f.var(), body);
    }
    case K::exists:
      return Formula::negation(Formula::forall(f.var(), Formula::negation(normalize(f.left()))));
  }
  return f;
}

bool is_normalized(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::disjunction:
    case K::implication:
    case K::biconditional:
    case K::exists:
      return false;
    case K::negation:
    case K::forall:
      return is_normalized(f.left());
    case K::conjunction:
      return is_normalized(f.left()) && is_normalized(f.right());
    default:
      return true;
  }
}

namespace {

constexpr std::uint32_t kCanonicalBase = 1u << 30;

struct AlphaRenamer {
  std::map<Variable, Variable> bound;
  std::uint32_t counter = 0;

  Variable rename(const Variable& v) const {
    auto it = bound.find(v);
    return it == bound.end() ? v : it->second;
  }

  Term term(const Term& t) const {
    switch (t.kind) {
      case TermKind::variable: return Term::variable(rename(t.var));
      case TermKind::constant: return t;
      case TermKind::apply: {
        std::vector<Term> args;
        args.reserve(t.args.size());
        for (const auto& a : t.args) args.push_back(term(a));
        return Term::apply(t.symbol, std::move(args));
      }
    }
    return t;
  }

  std::vector<Term> terms(const std::vector<Term>& ts) const {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(term(t));
    return out;
  }

  Formula run(const Formula& f) {
    using K = FormulaKind;
    switch (f.kind()) {
      case K::predicate: return Formula::predicate(f.symbol(), terms(f.terms()));
      case K::equal: return Formula::equal(term(f.terms()[0]), term(f.terms()[1]));
      case K::relation_apply: return Formula::relation_apply(rename(f.var()), terms(f.terms()));
      case K::relation_equal: return Formula::relation_equal(rename(f.var()), rename(f.var2()));
      case K::theta_apply: return Formula::theta_apply(terms(f.terms()), rename(f.var()));
      case K::negation: return Formula::negation(run(f.left()));
      case K::conjunction: return Formula::conjunction(run(f.left()), run(f.right()));
      case K::disjunction: return Formula::disjunction(run(f.left()), run(f.right()));
      case K::implication: return Formula::implication(run(f.left()), run(f.right()));
      case K::biconditional: return Formula::biconditional(run(f.left()), run(f.right()));
      case K::forall:
      case K::exists: {
        const Variable& v = f.var();
        Variable canon{v.sort, kCanonicalBase + counter++, v.arity};
        auto saved = bound.find(v) == bound.end() ? std::optional<Variable>{} : bound[v];
        bound[v] = canon;
        Formula body = run(f.left());
        if (saved) bound[v] = *saved; else bound.erase(v);
        return f.kind() == K::forall ? Formula::forall(canon, body) : Formula::exists(canon, body);
      }
    }
    return f;
  }
};

}  // namespace

Formula alpha_normalize(const Formula& f) {
  AlphaRenamer r;
  return r.run(f);
}

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  return alpha_normalize(a) == alpha_normalize(b);
}

bool equivalent_modulo_sugar(const Formula& a, const Formula& b) {
  return alpha_equal(normalize(a), normalize(b));
}

// ---------------------------------------------------------------------------
// Misc queries

bool is_first_order(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::predicate:
    case K::equal:
      return true;
    case K::relation_apply:
    case K::relation_equal:
    case K::theta_apply:
      return false;
    case K::negation:
      return is_first_order(f.left());
    case K::forall:
    case K::exists:
      return f.var().is_individual() && is_first_order(f.left());
    default:
      return is_first_order(f.left()) && is_first_order(f.right());
  }
}

bool mentions_theta(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::theta_apply: return true;
    case K::predicate:
    case K::equal:
    case K::relation_apply:
    case K::relation_equal:
      return false;
    case K::negation: return mentions_theta(f.left());
    case K::forall:
    case K::exists:
      return f.var().is_block() || mentions_theta(f.left());
    default:
      return mentions_theta(f.left()) || mentions_theta(f.right());
  }
}

std::uint32_t quantifier_rank(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::negation: return quantifier_rank(f.left());
    case K::conjunction:
    case K::disjunction:
    case K::implication:
    case K::biconditional:
      return std::max(quantifier_rank(f.left()), quantifier_rank(f.right()));
    case K::forall:
    case K::exists:
      return 1 + quantifier_rank(f.left());
    default:
      return 0;
  }
}

namespace {

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += term_size(a);
  return n;
}

}  // namespace

std::size_t formula_size(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::predicate:
    case K::equal:
    case K::relation_apply:
    case K::theta_apply: {
      std::size_t n = 1;
      for (const auto& t : f.terms()) n += term_size(t);
      return n;
    }
    case K::relation_equal: return 3;
    case K::negation:
    case K::forall:
    case K::exists:
      return 1 + formula_size(f.left());
    default:
      return 1 + formula_size(f.left()) + formula_size(f.right());
  }
}

namespace {

void check_term(const Term& t, const Signature& sig) {
  switch (t.kind) {
    case TermKind::variable: break;
    case TermKind::constant:
      if (t.symbol >= sig.constant_count) {
        throw PreconditionError("unknown constant c" + std::to_string(t.symbol));
      }
      break;
    case TermKind::apply:
      if (t.symbol >= sig.function_arities.size()) {
        throw PreconditionError("unknown function f" + std::to_string(t.symbol));
      }
      if (t.args.size() != sig.function_arities[t.symbol]) {
        throw ArityError("function f" + std::to_string(t.symbol) + " expects " +
                         std::to_string(sig.function_arities[t.symbol]) + " argument(s)");
      }
      for (const auto& a : t.args) check_term(a, sig);
      break;
  }
}

}  // namespace

void check_against(const Formula& f, const Signature& sig) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::predicate:
      if (f.symbol() >= sig.predicate_arities.size()) {
        throw PreconditionError("unknown predicate P" + std::to_string(f.symbol()));
      }
      if (f.terms().size() != sig.predicate_arities[f.symbol()]) {
        throw ArityError("predicate P" + std::to_string(f.symbol()) + " expects " +
                         std::to_string(sig.predicate_arities[f.symbol()]) + " argument(s)");
      }
      for (const auto& t : f.terms()) check_term(t, sig);
      break;
    case K::equal:
      if (!sig.identity) throw PreconditionError("identity atom in an identity-free signature");
      for (const auto& t : f.terms()) check_term(t, sig);
      break;
    case K::relation_apply:
    case K::theta_apply:
      for (const auto& t : f.terms()) check_term(t, sig);
      break;
    case K::relation_equal:
      if (!sig.identity) throw PreconditionError("second-order identity in an identity-free signature");
      break;
    case K::negation:
    case K::forall:
    case K::exists:
      check_against(f.left(), sig);
      break;
    default:
      check_against(f.left(), sig);
      check_against(f.right(), sig);
      break;
  }
}

Formula universal_closure(const Formula& f) {
  FreeVariables fv = free_variables(f);
  Formula out = f;
  for (auto it = fv.individuals.rbegin(); it != fv.individuals.rend(); ++it) out = Formula::forall(*it, out);
  for (auto it = fv.relations.rbegin(); it != fv.relations.rend(); ++it) out = Formula::forall(*it, out);
  return out;
}

bool match_implication(const Formula& f, BinaryView& out) {
  if (f.kind() == FormulaKind::implication) {
    out = {f.left(), f.right()};
    return true;
  }
  if (f.kind() != FormulaKind::negation) return false;
  const Formula& c = f.left();
  if (c.kind() != FormulaKind::conjunction || c.right().kind() != FormulaKind::negation) return false;
  out = {c.left(), c.right().left()};
  return true;
}

bool match_biconditional(const Formula& f, BinaryView& out) {
  if (f.kind() == FormulaKind::biconditional) {
    out = {f.left(), f.right()};
    return true;
  }
  if (f.kind() != FormulaKind::conjunction) return false;
  BinaryView a;
  BinaryView b;
  if (!match_implication(f.left(), a) || !match_implication(f.right(), b)) return false;
  if (!(a.lhs == b.rhs && a.rhs == b.lhs)) return false;
  out = a;
  return true;
}

bool match_exists(const Formula& f, Variable& v, Formula& body) {
  if (f.kind() == FormulaKind::exists) {
    v = f.var();
    body = f.left();
    return true;
  }
  if (f.kind() != FormulaKind::negation || f.left().kind() != FormulaKind::forall) return false;
  const Formula& q = f.left();
  if (q.left().kind() != FormulaKind::negation) return false;
  v = q.var();
  body = q.left().left();
  return true;
}

}  // namespace rsol
