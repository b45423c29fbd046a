#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace rsol {

// Vocabulary of a two-sorted language. Symbols are positional: predicate i
// is written `P<i>`, function i is `f<i>`, constant i is `c<i>`.
struct Signature {
  std::vector<std::uint32_t> predicate_arities;
  std::vector<std::uint32_t> function_arities;
  std::uint32_t constant_count = 0;
  bool identity = true;

  // Throws PreconditionError on arity-0 predicates or functions.
  void validate() const;

  // Copy with `count` extra constants appended; returns the index of the first.
  Signature with_extra_constants(std::uint32_t count, std::uint32_t* first_index = nullptr) const;

  bool operator==(const Signature&) const = default;
};

// "P0/1 P1/2 f0/1 c2 -identity": predicates and functions with arities, `cN`
// declares N constants, `-identity` switches identity off.
Signature parse_signature(const std::string& text);
std::string to_string(const Signature& sig);

enum class Sort : std::uint8_t {
  individual,  // x_n
  relation,    // V_m^{k}, k >= 1
  block,       // parameter block of a schematic theta atom (templates only)
};

struct Variable {
  Sort sort = Sort::individual;
  std::uint32_t index = 0;
  std::uint32_t arity = 0;

  static Variable individual(std::uint32_t index) { return {Sort::individual, index, 0}; }
  static Variable relation(std::uint32_t index, std::uint32_t arity);
  static Variable block(std::uint32_t index) { return {Sort::block, index, 0}; }

  bool is_individual() const { return sort == Sort::individual; }
  bool is_relation() const { return sort == Sort::relation; }
  bool is_block() const { return sort == Sort::block; }

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

std::string to_string(const Variable& v);

enum class TermKind : std::uint8_t { variable, constant, apply };

struct Term {
  TermKind kind = TermKind::variable;
  Variable var;
  std::uint32_t symbol = 0;  // constant or function index
  std::vector<Term> args;

  static Term variable(Variable v);
  static Term variable(std::uint32_t index) { return variable(Variable::individual(index)); }
  static Term constant(std::uint32_t index);
  static Term apply(std::uint32_t function, std::vector<Term> args);

  bool operator==(const Term&) const = default;
};

void collect_variables(const Term& t, std::set<Variable>& out);

enum class FormulaKind : std::uint8_t {
  predicate,       // P_i(t...)
  equal,           // t = s
  relation_apply,  // V(t...)
  relation_equal,  // V = W
  theta_apply,     // theta[n](t... ; block), schematic templates only
  negation,
  conjunction,
  disjunction,     // sugar
  implication,     // sugar
  biconditional,   // sugar
  forall,
  exists,          // sugar
};

struct FormulaNode;

// Immutable, shared formula tree. Copies are cheap.
class Formula {
 public:
  Formula() = default;

  static Formula predicate(std::uint32_t symbol, std::vector<Term> args);
  static Formula equal(Term lhs, Term rhs);
  static Formula relation_apply(Variable rel, std::vector<Term> args);
  static Formula relation_equal(Variable lhs, Variable rhs);
  static Formula theta_apply(std::vector<Term> slots, Variable block);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula biconditional(Formula a, Formula b);
  static Formula forall(Variable v, Formula body);
  static Formula exists(Variable v, Formula body);

  static Formula forall(const std::vector<Variable>& vs, Formula body);
  static Formula conjunction(const std::vector<Formula>& fs);
  static Formula disjunction(const std::vector<Formula>& fs);

  bool valid() const { return static_cast<bool>(node_); }
  FormulaKind kind() const;
  std::uint32_t symbol() const;
  const std::vector<Term>& terms() const;
  const Variable& var() const;   // binder, relation variable, or block
  const Variable& var2() const;  // right side of V = W
  const Formula& left() const;   // sole child of negation / quantifiers
  const Formula& right() const;

  bool is_atomic() const;
  bool is_quantifier() const { return kind() == FormulaKind::forall || kind() == FormulaKind::exists; }

  const FormulaNode* node() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  static Formula from_node(FormulaNode node);
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind = FormulaKind::predicate;
  std::uint32_t symbol = 0;
  std::vector<Term> terms;
  Variable var;
  Variable var2;
  Formula left;
  Formula right;
};

struct FreeVariables {
  std::set<Variable> individuals;
  std::set<Variable> relations;
  std::set<Variable> blocks;

  bool empty() const { return individuals.empty() && relations.empty() && blocks.empty(); }
  bool contains(const Variable& v) const;
};

FreeVariables free_variables(const Formula& f);
bool occurs_free(const Formula& f, const Variable& v);
bool is_sentence(const Formula& f);

// All variables (free or bound, every sort) mentioned anywhere.
void collect_variables(const Formula& f, std::set<Variable>& out);

// Next unused index per sort, counting every occurrence (free or bound).
struct FreshSupply {
  std::uint32_t individual = 0;
  std::uint32_t relation = 0;
  std::uint32_t block = 0;

  void observe(const Variable& v);
  void observe(const Formula& f);
  void observe(const Term& t);
  Variable fresh_like(const Variable& v);
};

// Rewrites disjunction, implication, biconditional and exists into the
// primitives negation, conjunction and forall:
//   a | b   ~> ~(~a & ~b)
//   a -> b  ~> ~(a & ~b)
//   a <-> b ~> (a -> b) & (b -> a), then normalized
//   E v. a  ~> ~A v. ~a
Formula normalize(const Formula& f);
bool is_normalized(const Formula& f);

// Renames every bound variable to a canonical name determined by binder
// position, so alpha-equivalent formulas become structurally equal.
Formula alpha_normalize(const Formula& f);
bool alpha_equal(const Formula& a, const Formula& b);

// Normalizes first, then compares up to alpha-equivalence.
bool equivalent_modulo_sugar(const Formula& a, const Formula& b);

bool is_first_order(const Formula& f);
bool mentions_theta(const Formula& f);
std::uint32_t quantifier_rank(const Formula& f);
std::size_t formula_size(const Formula& f);

// Checks symbol indices and arities against the signature and the identity
// flag. Throws ArityError / PreconditionError.
void check_against(const Formula& f, const Signature& sig);

// Universal closure over all free individual and relation variables.
Formula universal_closure(const Formula& f);

// Recognizers for the normalized encodings of the sugar connectives.
struct BinaryView {
  Formula lhs;
  Formula rhs;
};
bool match_implication(const Formula& f, BinaryView& out);
bool match_biconditional(const Formula& f, BinaryView& out);
// ~A v. ~body
bool match_exists(const Formula& f, Variable& v, Formula& body);

}  // namespace rsol
