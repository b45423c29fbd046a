#include <map>

#include "rsol/calculus.hpp"
#include "rsol/error.hpp"

namespace rsol {

namespace {

Formula imp(const Formula& a, const Formula& b) { return Formula::implication(a, b); }

Formula consequent(const Formula& f) {
  if (f.kind() == FormulaKind::implication) return f.right();
  BinaryView v;
  if (!match_implication(normalize(f), v)) throw PreconditionError("expected an implication");
  return v.rhs;
}

class Rewriter {
 public:
  Rewriter(const Proof& in, const Formula& phi, std::vector<std::optional<std::size_t>> premise_map,
           const KernelContext& ctx)
      : in_(in), phi_(phi), premise_map_(std::move(premise_map)), ctx_(ctx) {}

  // Lines proving phi -> L for every line L; the image of line k is out[map[k]].
  std::vector<ProofLine> lines(const std::vector<ProofLine>& src, Proof* outer) {
    std::vector<ProofLine> out;
    std::vector<std::size_t> where(src.size());
    for (std::size_t k = 0; k < src.size(); ++k) {
      const ProofLine& line = src[k];
      const Formula& L = line.formula;
      const Justification& j = line.just;
      switch (j.rule) {
        case RuleKind::premise:
          if (!premise_map_[j.premise]) {
            where[k] = taut(out, imp(phi_, phi_));
            break;
          }
          where[k] = lift(out, L, Justification::premise_of(*premise_map_[j.premise]));
          break;
        case RuleKind::axiom:
          where[k] = lift(out, L, j);
          break;
        case RuleKind::mp: {
          // phi -> A and phi -> (A -> L) give phi -> L through S.
          const Formula& A = src[j.minor].formula;
          std::size_t s = add(out, imp(imp(phi_, imp(A, L)), imp(imp(phi_, A), imp(phi_, L))),
                              Justification::axiom(Schema::S, inst({phi_, A, L})));
          std::size_t m = mp(out, where[j.major], s);
          where[k] = mp(out, where[j.minor], m);
          break;
        }
        case RuleKind::gen: {
          const Formula& A = src[j.from].formula;
          std::size_t g = add(out, Formula::forall(j.var, imp(phi_, A)), Justification::gen(where[j.from], j.var));
          Instantiation data = inst({phi_, A});
          data.vars = {j.var};
          Schema s = j.var.is_relation() ? Schema::A5 : Schema::Q2;
          std::size_t ax = add(out, imp(Formula::forall(j.var, imp(phi_, A)), imp(phi_, Formula::forall(j.var, A))),
                               Justification::axiom(s, data));
          where[k] = mp(out, g, ax);
          break;
        }
        case RuleKind::r3: {
          if (!outer) throw PreconditionError("R3 inside a template");
          // (phi & chi) -> forall V sigma by a rewritten template, then curry.
          const OmegaTemplate& t = rewritten(j.templ, outer);
          std::size_t r = add(out, t.target, Justification::r3(t.id));
          where[k] = taut_mp(out, r, imp(phi_, L));
          break;
        }
      }
    }
    if (!src.empty()) last_ = where.back();
    return out;
  }

  std::size_t last() const { return last_; }

 private:
  static Instantiation inst(std::vector<Formula> fs) {
    Instantiation i;
    i.formulas = std::move(fs);
    return i;
  }

  std::size_t add(std::vector<ProofLine>& out, Formula f, Justification j) {
    out.push_back({std::move(f), std::move(j)});
    return out.size() - 1;
  }

  std::size_t mp(std::vector<ProofLine>& out, std::size_t minor, std::size_t major) {
    return add(out, consequent(out[major].formula), Justification::mp(minor, major));
  }

  std::size_t taut(std::vector<ProofLine>& out, const Formula& f) {
    auto data = match_schema(Schema::taut, f, ctx_);
    if (!data) throw PreconditionError("deduction produced a non-tautology");
    return add(out, f, Justification::axiom(Schema::taut, *data));
  }

  // From line `from` (A) derive B when A -> B is a tautology.
  std::size_t taut_mp(std::vector<ProofLine>& out, std::size_t from, const Formula& B) {
    std::size_t t = taut(out, imp(out[from].formula, B));
    return mp(out, from, t);
  }

  // L, then L -> (phi -> L), then phi -> L.
  std::size_t lift(std::vector<ProofLine>& out, const Formula& L, Justification j) {
    std::size_t a = add(out, L, std::move(j));
    std::size_t k = add(out, imp(L, imp(phi_, L)), Justification::axiom(Schema::K, inst({L, phi_})));
    return mp(out, a, k);
  }

  const OmegaTemplate& rewritten(const std::string& id, Proof* outer) {
    auto it = done_.find(id);
    if (it != done_.end()) return *outer->find_template(it->second);
    const OmegaTemplate* t = in_.find_template(id);
    if (!t) throw PreconditionError("unknown template " + id);
    auto target = split_target(t->target);
    OmegaTemplate nt;
    nt.id = id + "_d";
    while (outer->find_template(nt.id) || in_.find_template(nt.id)) nt.id += "_";
    nt.target = imp(Formula::conjunction(phi_, target->psi), Formula::forall(target->rel, target->phi));
    nt.lines = lines(t->lines, nullptr);
    // phi -> (chi -> s) gives (phi & chi) -> s.
    Formula s = consequent(t->lines.back().formula);
    taut_mp(nt.lines, last_, imp(Formula::conjunction(phi_, target->psi), s));
    outer->templates.push_back(std::move(nt));
    done_.emplace(id, outer->templates.back().id);
    return outer->templates.back();
  }

  const Proof& in_;
  Formula phi_;
  std::vector<std::optional<std::size_t>> premise_map_;
  KernelContext ctx_;
  std::map<std::string, std::string> done_;
  std::size_t last_ = 0;
};

}  // namespace

Proof apply_deduction(const Proof& p, const Formula& phi) {
  if (!is_sentence(phi)) throw PreconditionError("the discharged formula must be a sentence");
  CheckResult r = check_proof(p);
  if (!r.accepted) throw PreconditionError("input proof is rejected: " + r.reason);

  Proof out;
  out.sig = p.sig;
  out.theta = p.theta;
  std::vector<std::optional<std::size_t>> premise_map(p.sigma.size());
  for (std::size_t i = 0; i < p.sigma.size(); ++i) {
    if (same_formula(p.sigma[i], phi)) continue;
    premise_map[i] = out.sigma.size();
    out.sigma.push_back(p.sigma[i]);
  }
  KernelContext ctx = context_of(p);
  Rewriter rw(p, phi, premise_map, ctx);
  out.lines = rw.lines(p.lines, &out);
  // Keep the last line as the conclusion.
  if (rw.last() + 1 != out.lines.size()) {
    ProofLine copy = out.lines[rw.last()];
    std::size_t k = out.lines.size();
    out.lines.push_back({imp(copy.formula, copy.formula), Justification::axiom(Schema::taut, Instantiation{})});
    out.lines.back().just.inst = *match_schema(Schema::taut, out.lines.back().formula, ctx);
    out.lines.push_back({copy.formula, Justification::mp(rw.last(), k)});
  }
  out.goal = imp(phi, p.goal ? *p.goal : p.lines.back().formula);
  return out;
}

Proof apply_deduction(const Proof& p, std::size_t premise_index) {
  if (premise_index >= p.sigma.size()) throw PreconditionError("no premise " + std::to_string(premise_index + 1));
  return apply_deduction(p, p.sigma[premise_index]);
}

}  // namespace rsol
