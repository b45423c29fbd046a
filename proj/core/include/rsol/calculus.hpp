#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsol/formula.hpp"
#include "rsol/theta.hpp"

namespace rsol {

// Axiom schemata. The first-order base is
//   K       A -> (B -> A)
//   S       (A -> (B -> C)) -> ((A -> B) -> (A -> C))
//   contra  (~B -> ~A) -> ((~B -> A) -> B)
//   taut    any substitution instance of a propositional tautology
//   Q1      forall x A -> A(x/t)              t free for x in A
//   Q2      forall v (A -> B) -> (A -> forall v B)    v not free in A
//   E1      t = t
//   E2      x = y -> (A -> A')   A' replaces some free x in A by y
// followed by the second-order schemata A1-A6.
enum class Schema : std::uint8_t { K, S, contra, taut, Q1, Q2, E1, E2, A1, A2, A3, A4, A5, A6 };

std::string to_string(Schema s);
std::optional<Schema> parse_schema(const std::string& name);

// Metavariable values of an axiom instance; enough to rebuild the line.
struct Instantiation {
  std::vector<Formula> formulas;
  std::vector<Term> terms;
  std::vector<Variable> vars;
  std::uint64_t theta_index = 0;
  std::uint32_t arity = 0;
  bool schematic = false;  // A1(n) / A6(n) inside a template
  // taut: propositional skeleton whose letters are 0-ary atoms indexing
  // `formulas`.
  Formula skeleton;
};

enum class RuleKind : std::uint8_t { premise, axiom, mp, gen, r3 };

struct Justification {
  RuleKind rule = RuleKind::premise;
  std::size_t premise = 0;  // index into sigma
  Schema schema = Schema::K;
  Instantiation inst;
  std::size_t minor = 0;  // mp: the line A
  std::size_t major = 0;  // mp: the line A -> B
  std::size_t from = 0;   // gen
  Variable var;           // gen
  std::string templ;      // r3

  static Justification premise_of(std::size_t i);
  static Justification axiom(Schema s, Instantiation inst);
  static Justification mp(std::size_t minor, std::size_t major);
  static Justification gen(std::size_t from, Variable v);
  static Justification r3(std::string id);
};

struct ProofLine {
  Formula formula;
  Justification just;
};

// Uniform certificate for the ω premises ψ -> φ^m_0, ψ -> φ^m_1, ... of R3.
// Lines may use the opaque atom θ[n](t̄; ys) and block quantifiers; the last
// line must be ψ -> φ^m_n in schematic form.
struct OmegaTemplate {
  std::string id;
  Formula target;  // ψ -> forall V_m φ
  std::vector<ProofLine> lines;
};

struct Proof {
  Signature sig;
  ThetaFamilyPtr theta;
  std::vector<Formula> sigma;
  std::vector<ProofLine> lines;
  std::vector<OmegaTemplate> templates;
  // When set the last line must be this formula.
  std::optional<Formula> goal;

  const OmegaTemplate* find_template(const std::string& id) const;
};

struct KernelContext {
  Signature sig;
  ThetaFamilyPtr theta;
  std::vector<Formula> sigma;
  // Upper bound on θ indices tried when an A1/A6 index must be found.
  std::uint64_t search_limit = 64;
};

KernelContext context_of(const Proof& p);

struct CheckResult {
  bool accepted = false;
  std::optional<std::size_t> line;  // failing line (0-based)
  std::string template_id;          // set when the failure is inside a template
  std::string reason;
};

// Same up to sugar and bound-variable names.
bool same_formula(const Formula& a, const Formula& b);

// Infers the instantiation of `schema` for `f`; nullopt when f is not an
// instance. `theta_index` fixes n for A1/A6; `schematic` selects A1(n)/A6(n).
std::optional<Instantiation> match_schema(Schema schema, const Formula& f, const KernelContext& ctx,
                                          std::optional<std::uint64_t> theta_index = std::nullopt,
                                          bool schematic = false);

// Formula determined by the instantiation. Throws PreconditionError when the
// data is incomplete.
Formula build_schema(Schema schema, const Instantiation& inst, const KernelContext& ctx);

// Empty when the line is the instance described by `inst` and every side
// condition holds; otherwise the reason.
std::optional<std::string> check_axiom(const Formula& f, Schema schema, const Instantiation& inst,
                                       const KernelContext& ctx, std::uint32_t template_arity = 0);

struct AxiomMatch {
  Schema schema;
  Instantiation inst;
};

// First schema (A1..A6, then the first-order base, taut last) of which f is
// an instance.
std::optional<AxiomMatch> recognize_axiom(const Formula& f, const KernelContext& ctx);

CheckResult check_template(const OmegaTemplate& t, const KernelContext& ctx);
CheckResult check_proof(const Proof& p);

// Concrete proof of ψ -> φ^m_n obtained by replacing θ[n] with the family's
// member n. Axiom instantiations are inferred afresh from the concrete lines.
Proof instantiate_template(const OmegaTemplate& t, const KernelContext& ctx, std::uint64_t n);

struct SpotCheck {
  bool passed = false;
  std::uint64_t checked = 0;
  std::optional<std::uint64_t> failing_n;
  std::string reason;  // "evidence(N)" on success
};

SpotCheck spot_check_template(const OmegaTemplate& t, const KernelContext& ctx, std::uint64_t bound);

// Decomposition ψ -> forall V φ of a template target.
struct TemplateTarget {
  Formula psi;
  Variable rel;
  Formula phi;
};
std::optional<TemplateTarget> split_target(const Formula& target);

// From a proof of Σ ∪ {φ} ⊢ ψ (φ = sigma[index]), a proof of Σ ⊢ φ -> ψ.
// R3 steps are rebuilt through templates for φ ∧ χ -> σ^m_n. Throws
// PreconditionError when the input is rejected or φ is not a sentence.
Proof apply_deduction(const Proof& p, std::size_t premise_index);
// Discharges φ whether or not it occurs in sigma.
Proof apply_deduction(const Proof& p, const Formula& phi);

}  // namespace rsol
