#include "rsol_cli/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rsol/boolean.hpp"
#include "rsol/calculus.hpp"
#include "rsol/definability.hpp"
#include "rsol/error.hpp"
#include "rsol/evaluation.hpp"
#include "rsol/parser.hpp"
#include "rsol/proof_io.hpp"
#include "rsol/random.hpp"
#include "rsol/substitution.hpp"
#include "rsol/theta.hpp"
#include "rsol/truth_algebra.hpp"
#include "rsol_cli/corpus.hpp"

namespace rsol::cli {

std::size_t SuiteResult::passed() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const Record& r) { return r.pass; }));
}

std::size_t SuiteResult::failed() const { return records.size() - passed(); }

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("RSOL_BUDGET");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw PreconditionError(std::string("RSOL_BUDGET must be a positive integer, got '") + env + "'");
  return v;
}

namespace {

std::string show(const Formula& f) {
  PrintOptions po;
  po.ascii = true;
  po.resugar = true;
  return print(f, po);
}

std::uint32_t pick(Rng& rng, std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng); }

// Pass count plus the first failure, folded into one record.
struct Tally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& what) {
    if (ok) {
      ++pass;
      return;
    }
    if (fail++ == 0) first = what();
  }
  std::size_t total() const { return pass + fail; }
  Record record(const std::string& name, const std::string& extra = {}) const {
    std::string detail = std::to_string(pass) + "/" + std::to_string(total());
    if (!extra.empty()) detail += " " + extra;
    if (fail) detail += "; first failure: " + first;
    return {name, fail == 0 && total() > 0, detail};
  }
};

KProviderPtr semantic_provider(const FiniteStructure& s, const ThetaFamilyPtr& fam) {
  if (fam->kind() == ThetaKind::custom) return bounded_provider(s, fam, 64);
  return exact_provider(s, *fam);
}

std::uint32_t max_relation_arity(const Formula& f) {
  std::set<Variable> vs;
  collect_variables(f, vs);
  std::uint32_t a = 0;
  for (const auto& v : vs) {
    if (v.is_relation()) a = std::max(a, v.arity);
  }
  return a;
}

// --- soundness ------------------------------------------------------------------

Formula random_body(Rng& rng, const Signature& sig, std::uint32_t rel_vars, std::uint32_t arity, bool quantify) {
  RandomFormulaOptions o;
  o.depth = 3;
  o.individual_vars = 2;
  o.relation_vars = rel_vars;
  o.relation_arities = {arity};
  o.relation_quantifiers = quantify;
  o.term_depth = 0;
  return random_formula(rng, sig, o);
}

Instantiation axiom_data(Schema schema, Rng& rng, const Signature& sig, std::uint32_t arity, std::uint32_t max_index) {
  Instantiation in;
  const Variable v0 = Variable::relation(0, arity);
  const Variable v1 = Variable::relation(1, arity);
  const Variable v2 = Variable::relation(2, arity);
  switch (schema) {
    case Schema::A1:
      in.theta_index = pick(rng, max_index + 1);
      in.arity = arity;
      break;
    case Schema::A2:
      in.arity = arity;
      break;
    case Schema::A3: {
      Formula phi = random_body(rng, sig, 1, arity, false);
      Formula psi = replace_relation(phi, v0, [&](const std::vector<Term>& args) {
        return Formula::relation_apply(pick(rng, 2) ? v1 : v0, args);
      });
      in.formulas = {phi, psi};
      in.vars = {v0, v1};
      break;
    }
    case Schema::A4:
      in.formulas = {random_body(rng, sig, 2, arity, true)};
      in.vars = {v0, pick(rng, 2) ? v1 : v2};
      break;
    case Schema::A5:
      // X2 never occurs in the antecedent.
      in.formulas = {random_body(rng, sig, 2, arity, true), random_body(rng, sig, 3, arity, true)};
      in.vars = {v2};
      break;
    case Schema::A6:
      in.formulas = {random_body(rng, sig, 1, arity, true)};
      in.vars = {v0};
      in.theta_index = pick(rng, max_index + 1);
      in.arity = arity;
      break;
    default:
      throw PreconditionError("not a second-order schema");
  }
  return in;
}

SuiteResult soundness(std::uint64_t seed) {
  SuiteResult out;
  Rng rng(seed);
  const Signature sig = parse_signature("P0/1 P1/2 c1");
  const std::vector<ThetaFamilyPtr> families = {make_weak_so(sig, 1), make_dsl(sig), make_all_fo(sig)};
  const Schema schemas[] = {Schema::A1, Schema::A2, Schema::A3, Schema::A4, Schema::A5, Schema::A6};
  const int per_schema = 200;
  std::size_t total = 0;
  std::size_t good = 0;
  for (Schema schema : schemas) {
    Tally tally;
    std::map<std::string, int> per_family;
    for (int i = 0; i < per_schema; ++i) {
      const ThetaFamilyPtr& fam = families[static_cast<std::size_t>(i) % families.size()];
      // Binary relation variables only under all-fo, on domains of size <= 2.
      std::uint32_t arity = fam->kind() == ThetaKind::all_fo && pick(rng, 4) == 0 ? 2 : 1;
      std::uint32_t domain = 1 + pick(rng, arity == 2 ? 2 : 4);
      double density = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
      FiniteStructure s = random_structure(rng, sig, domain, density);
      KernelContext ctx;
      ctx.sig = sig;
      ctx.theta = fam;
      std::uint32_t max_index = fam->kind() == ThetaKind::weak_so ? 3 : 6;
      Instantiation in = axiom_data(schema, rng, sig, arity, max_index);
      Formula f = build_schema(schema, in, ctx);
      auto kernel = check_axiom(f, schema, in, ctx);
      bool truth = eval_so(make_model(s, exact_provider(s, *fam)), universal_closure(f));
      tally.check(!kernel && truth, [&] {
        return fam->name() + " |A|=" + std::to_string(domain) + " " + show(f) +
               (kernel ? " (kernel: " + *kernel + ")" : " evaluates false") + " on " + structure_to_json(s);
      });
      ++per_family[fam->name()];
    }
    std::string split;
    for (const auto& [name, n] : per_family) split += (split.empty() ? "" : ", ") + name + " " + std::to_string(n);
    out.records.push_back(tally.record(to_string(schema), "instances true (" + split + ")"));
    total += tally.total();
    good += tally.pass;
  }
  out.summary = std::to_string(good) + "/" + std::to_string(total) + " axiom instances true";
  return out;
}

// --- rule soundness over the corpus -------------------------------------------------

SuiteResult rules(std::uint64_t seed) {
  SuiteResult out;
  Rng rng(seed);
  const std::size_t want_models = 20;
  const std::size_t max_attempts = 5000;
  std::size_t proofs = 0;
  std::size_t with_r3 = 0;
  for (const auto& [name, p] : proof_corpus()) {
    ++proofs;
    if (!p.templates.empty()) ++with_r3;
    CheckResult verdict = check_proof(p);
    std::uint32_t arity = 1;
    for (const auto& l : p.lines) arity = std::max(arity, max_relation_arity(l.formula));
    std::uint32_t max_domain = arity >= 2 ? 3 : 4;

    // Template instances n = 0..3 are evaluated alongside the proof lines.
    KernelContext ctx = context_of(p);
    std::vector<Formula> extra;
    for (const auto& t : p.templates) {
      for (std::uint64_t n = 0; n <= 3; ++n) {
        for (const auto& l : instantiate_template(t, ctx, n).lines) extra.push_back(l.formula);
      }
    }

    Tally tally;
    std::size_t models = 0;
    for (std::size_t attempt = 0; attempt < max_attempts && models < want_models; ++attempt) {
      std::uint32_t domain = 1 + pick(rng, max_domain);
      double density = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      FiniteStructure s = random_structure(rng, p.sig, domain, density);
      StandardModel m = make_model(s, semantic_provider(s, p.theta));
      bool premises = std::all_of(p.sigma.begin(), p.sigma.end(), [&](const Formula& f) { return eval_so(m, f); });
      if (!premises) continue;
      ++models;
      for (std::size_t k = 0; k < p.lines.size(); ++k) {
        tally.check(eval_so(m, universal_closure(p.lines[k].formula)), [&] {
          return "line " + std::to_string(k + 1) + " false on " + structure_to_json(s);
        });
      }
      for (const auto& f : extra) {
        tally.check(eval_so(m, universal_closure(f)), [&] { return "template instance " + show(f) + " false"; });
      }
    }
    Record r = tally.record(name, "evaluations true over " + std::to_string(models) + " models");
    if (!verdict.accepted) {
      r.pass = false;
      r.detail += "; proof rejected: " + verdict.reason;
    }
    if (models < want_models) {
      r.pass = false;
      r.detail += "; only " + std::to_string(models) + " models satisfy the premises";
    }
    out.records.push_back(std::move(r));
  }
  out.records.push_back({"corpus-size", proofs >= 20 && with_r3 >= 3,
                         std::to_string(proofs) + " proofs, " + std::to_string(with_r3) + " with R3 templates"});
  out.summary = std::to_string(out.passed()) + "/" + std::to_string(out.records.size()) + " corpus checks";
  return out;
}

// --- full second-order collapse -----------------------------------------------------

SuiteResult collapse(std::uint64_t) {
  SuiteResult out;
  auto catalog = collapse_catalog();
  auto sentences = collapse_sentences(50);
  Tally tally;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const FiniteStructure& s = catalog[i];
    StandardModel m = make_model(s, exact_provider(s, *make_all_fo(s.sig)));
    for (std::size_t j = 0; j < sentences.size(); ++j) {
      bool restricted = eval_so(m, sentences[j]);
      bool full = eval_full_so(s, sentences[j]);
      tally.check(restricted == full, [&] {
        return "structure " + std::to_string(i) + " sentence " + std::to_string(j) + ": " + show(sentences[j]);
      });
    }
  }
  out.records.push_back(tally.record("all-fo oracle = full SO", "agreements on " + std::to_string(catalog.size()) +
                                                                    " structures x " +
                                                                    std::to_string(sentences.size()) + " sentences"));

  // The oracle itself: enumerating all-fo members does reach every unary
  // relation on small domains.
  for (std::uint32_t n = 1; n <= 2; ++n) {
    auto it = std::find_if(catalog.begin(), catalog.end(), [&](const FiniteStructure& c) { return c.domain_size == n; });
    if (it == catalog.end()) continue;
    const FiniteStructure& s = *it;
    auto fam = make_all_fo(s.sig);
    std::size_t reached = materialize_k(s, *fam, 40, 1).size(1);
    std::size_t all = std::size_t{1} << n;
    out.records.push_back({"all-fo enumeration |A|=" + std::to_string(n), reached == all,
                           std::to_string(reached) + "/" + std::to_string(all) + " unary relations by member 40"});
  }
  out.summary = std::to_string(tally.fail) + " mismatches in " + std::to_string(tally.total()) + " comparisons";
  return out;
}

// --- weak second-order materialization ------------------------------------------

SuiteResult weakso(std::uint64_t) {
  SuiteResult out;
  const Signature empty = parse_signature("");
  auto fam = make_weak_so(empty, 1);
  std::string summary;
  for (std::uint32_t n = 1; n <= 5; ++n) {
    FiniteStructure s = FiniteStructure::blank(empty, n);
    DefinableFamily k = materialize_k(s, *fam, n - 1, 1);
    std::set<std::vector<std::uint32_t>> got;
    for (const auto& r : k.relations(1)) {
      std::vector<std::uint32_t> members;
      for (Element a = 0; a < n; ++a) {
        if (r.contains({a})) members.push_back(a);
      }
      got.insert(members);
    }
    std::set<std::vector<std::uint32_t>> want;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::uint32_t> members;
      for (Element a = 0; a < n; ++a) {
        if (mask >> a & 1u) members.push_back(a);
      }
      want.insert(members);
    }
    std::string counts = std::to_string(got.size()) + "/" + std::to_string(want.size());
    out.records.push_back({"materialize |A|=" + std::to_string(n), got == want, counts + " nonempty subsets"});
    summary += counts + " subsets for |A|=" + std::to_string(n) + "; ";
  }

  FiniteStructure two = two_element_pure();
  Formula singletons = parse_formula("forall x exists X forall y (X(y) <-> x = y)", two.sig);
  bool weak = eval_so(make_model(two, bounded_provider(two, make_weak_so(two.sig, 1), 2)), singletons);
  bool dsl = eval_so(make_model(two, exact_provider(two, *make_dsl(two.sig))), singletons);
  out.records.push_back({"singletons under weak-so", weak, weak ? "true" : "false"});
  out.records.push_back({"singletons under dsl orbits", !dsl, dsl ? "true" : "false"});
  out.summary = summary + (out.ok() ? "pass" : "FAIL");
  return out;
}

// --- dsl bounded rank vs orbit oracle ------------------------------------------------

SuiteResult dsl_orbits(std::uint64_t) {
  SuiteResult out;
  auto catalog = orbit_catalog();
  std::size_t equal = 0;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const FiniteStructure& s = catalog[i];
    std::uint32_t rank = s.domain_size + 1;
    auto bounded = rank_definable(s, rank, 1).relations(1);
    auto exact = k_exact_orbits(s, false, 1).relations(1);
    bool same = bounded == exact;
    // Literal dsl members never leave the invariant relations.
    auto members = materialize_k(s, *make_dsl(s.sig), 30, 1).relations(1);
    bool sound = std::all_of(members.begin(), members.end(), [&](const Relation& r) {
      return std::find(exact.begin(), exact.end(), r) != exact.end();
    });
    if (same && sound) ++equal;
    std::ostringstream d;
    d << "|A|=" << s.domain_size << " sig '" << to_string(s.sig) << "' rank<=" << rank << ": " << bounded.size()
      << " bounded vs " << exact.size() << " invariant; " << members.size() << " from dsl members 0..30"
      << (sound ? "" : " (some not invariant)");
    out.records.push_back({"structure " + std::to_string(i), same && sound, d.str()});
  }
  out.records.push_back({"catalog-size", catalog.size() >= 20, std::to_string(catalog.size()) + " structures"});
  out.summary = std::to_string(equal) + "/" + std::to_string(catalog.size()) + " structures with equal families";
  return out;
}

// --- lemma analogs -----------------------------------------------------------------

SuiteResult lemma_reg(std::uint64_t seed) {
  SuiteResult out;
  Rng rng(seed);
  const Signature sig = parse_signature("P0/1 P1/2 c1");
  const std::vector<ThetaFamilyPtr> families = {make_weak_so(sig, 1), make_dsl(sig), make_all_fo(sig)};
  const Variable x1 = Variable::individual(1);
  const Variable X0 = Variable::relation(0, 1);
  const int triples = 60;
  std::size_t holding = 0;
  for (int t = 0; t < triples; ++t) {
    const ThetaFamilyPtr& fam = families[static_cast<std::size_t>(t) % families.size()];
    std::uint32_t domain = 1 + pick(rng, 3);
    FiniteStructure s = random_structure(rng, sig, domain, std::uniform_real_distribution<double>(0.2, 0.8)(rng));
    Formula phi = random_body(rng, sig, 1, 1, true);
    std::uint64_t bound = fam->kind() == ThetaKind::weak_so ? domain - 1 : fam->kind() == ThetaKind::dsl ? 8 : 5;
    // Items (i)/(ii) need a formula without free relation variables.
    Formula closed = occurs_free(phi, X0) ? Formula::forall(X0, phi) : phi;
    std::string failed;
    for (int item = 1; item <= 6; ++item) {
      auto which = static_cast<LemmaItem>(item);
      bool fo_item = which == LemmaItem::i || which == LemmaItem::ii;
      LemmaCheck c = lemma_reg_check(s, 2, fo_item ? closed : phi, fo_item ? x1 : X0, which, fam, bound);
      if (!c.holds) failed += " (" + to_string(which) + ": " + c.lhs + " vs " + c.rhs + ")";
    }
    bool ok = failed.empty();
    if (ok) ++holding;
    out.records.push_back({"triple " + std::to_string(t), ok,
                           fam->name() + " |A|=" + std::to_string(domain) + " N=" + std::to_string(bound) + " " +
                               show(phi) + (ok ? ": i-vi hold" : ":" + failed)});
  }
  out.summary = std::to_string(holding) + "/" + std::to_string(triples) + " triples with all six identities";
  return out;
}

// --- Rasiowa-Sikorski -------------------------------------------------------------

SuiteResult rs(std::uint64_t) {
  SuiteResult out;
  const std::uint64_t budget = budget_from_env(10000);
  RsOptions opt;
  opt.witness_budget = budget;

  PowersetAlgebra alg(3);
  auto family = complete_regular_family(alg);
  std::size_t runs = 0;
  for (std::uint64_t i = 0; i < *alg.size(); ++i) {
    auto avoid = alg.element(i);
    if (alg.equal(avoid, alg.one())) continue;
    ++runs;
    auto u = rs_construct(alg, family, avoid, opt);
    auto m = membership_of(alg, u);
    bool ultra = is_ultrafilter(alg, m.contains);
    bool avoided = !m.contains(avoid);
    std::size_t compatible = 0;
    for (const auto& e : family) {
      if (check_f_compatible(alg, m, e, budget).verdict == Verdict::yes) ++compatible;
    }
    bool principal = u.last().count() == 1;
    std::ostringstream d;
    d << "U generated by " << alg.format(u.last()) << ", ultrafilter "
      << (ultra ? "yes" : "no") << ", avoided " << (avoided ? "yes" : "no") << ", " << compatible << "/"
      << family.size() << " entries compatible";
    out.records.push_back({"powerset:3 avoid " + alg.format(avoid),
                           ultra && avoided && principal && compatible == family.size(), d.str()});
  }
  out.records.push_back({"powerset:3 avoid choices", runs == 7, std::to_string(runs) + " non-unit elements"});

  FiniteCofiniteAlgebra fc;
  auto atoms = fincof_atoms_entry();
  auto u = rs_construct(fc, std::vector<RegularEntry<FinCofElement>>{atoms}, fc.zero(), opt);
  auto m = membership_of(fc, u);
  const FinCofElement& last = u.last();
  bool principal = !last.cofinite && last.set.size() == 1;
  auto with_u = check_f_compatible(fc, m, atoms, budget);
  out.records.push_back({"fincof atoms: principal decision", principal && with_u.verdict == Verdict::yes,
                         "b0 = " + fc.format(u.chain.front()) + ", U generated by " + fc.format(last) +
                             ", compatibility " + to_string(with_u.verdict)});
  auto with_cofinite = check_f_compatible(fc, cofinite_ultrafilter(), atoms, budget);
  out.records.push_back({"fincof atoms: cofinite ultrafilter", with_cofinite.verdict == Verdict::no,
                         "compatibility " + to_string(with_cofinite.verdict) + " (" + with_cofinite.reason + ")"});
  out.summary = out.ok() ? "all entries compatible, avoided elements excluded" : "FAIL";
  return out;
}

// --- kernel robustness ---------------------------------------------------------------

// Rebuilds f with its `target`-th atom (preorder) changed.
class AtomMutator {
 public:
  AtomMutator(Rng& rng, const Signature& sig, std::size_t target) : rng_(rng), sig_(sig), target_(target) {}

  Formula run(const Formula& f) {
    using K = FormulaKind;
    if (f.is_atomic()) return seen_++ == target_ ? mutate(f) : f;
    switch (f.kind()) {
      case K::negation: return Formula::negation(run(f.left()));
      case K::conjunction: return Formula::conjunction(run(f.left()), run(f.right()));
      case K::disjunction: return Formula::disjunction(run(f.left()), run(f.right()));
      case K::implication: return Formula::implication(run(f.left()), run(f.right()));
      case K::biconditional: return Formula::biconditional(run(f.left()), run(f.right()));
      case K::forall: return Formula::forall(f.var(), run(f.left()));
      case K::exists: return Formula::exists(f.var(), run(f.left()));
      default: return f;
    }
  }

 private:
  Formula mutate(const Formula& a) {
    using K = FormulaKind;
    switch (pick(rng_, 3)) {
      case 0:
        return Formula::negation(a);
      case 1:
        if (a.kind() == K::predicate) {
          const auto& ar = sig_.predicate_arities;
          for (std::uint32_t p = 0; p < ar.size(); ++p) {
            if (p != a.symbol() && ar[p] == ar[a.symbol()]) return Formula::predicate(p, a.terms());
          }
        }
        if (a.kind() == K::relation_apply) {
          Variable v = a.var();
          ++v.index;
          return Formula::relation_apply(v, a.terms());
        }
        return Formula::negation(a);
      default: {
        if (a.kind() == K::relation_equal || a.terms().empty()) return Formula::negation(a);
        std::vector<Term> ts = a.terms();
        Term& t = ts[pick(rng_, static_cast<std::uint32_t>(ts.size()))];
        if (t.kind == TermKind::variable) {
          t = Term::variable(t.var.index + 1);
        } else {
          t = Term::variable(0);
        }
        switch (a.kind()) {
          case K::predicate: return Formula::predicate(a.symbol(), ts);
          case K::equal: return Formula::equal(ts[0], ts[1]);
          case K::relation_apply: return Formula::relation_apply(a.var(), ts);
          case K::theta_apply: return Formula::theta_apply(ts, a.var());
          default: return Formula::negation(a);
        }
      }
    }
  }

  Rng& rng_;
  const Signature& sig_;
  std::size_t target_;
  std::size_t seen_ = 0;
};

std::size_t count_atoms(const Formula& f) {
  if (f.is_atomic()) return 1;
  switch (f.kind()) {
    case FormulaKind::negation:
    case FormulaKind::forall:
    case FormulaKind::exists:
      return count_atoms(f.left());
    default:
      return count_atoms(f.left()) + count_atoms(f.right());
  }
}

bool rejected_after_reload(const Proof& p) {
  try {
    ProofReadOptions opt;
    opt.theta = p.theta;
    return !check_proof(parse_proof(print_proof(p), opt)).accepted;
  } catch (const Error&) {
    return true;
  }
}

SuiteResult kernel(std::uint64_t seed) {
  SuiteResult out;
  Rng rng(seed);
  auto corpus = proof_corpus();

  Tally mutations;
  std::size_t equivalent = 0;
  const std::size_t wanted = 500;
  for (std::size_t tries = 0; mutations.total() < wanted && tries < 20 * wanted; ++tries) {
    const auto& [name, original] = corpus[pick(rng, static_cast<std::uint32_t>(corpus.size()))];
    std::size_t lines = original.lines.size();
    for (const auto& t : original.templates) lines += t.lines.size();
    std::size_t at = pick(rng, static_cast<std::uint32_t>(lines));
    Proof p = original;
    ProofLine* line = nullptr;
    std::string where;
    if (at < p.lines.size()) {
      line = &p.lines[at];
      where = name + " line " + std::to_string(at + 1);
    } else {
      at -= p.lines.size();
      for (auto& t : p.templates) {
        if (at < t.lines.size()) {
          line = &t.lines[at];
          where = name + " template " + t.id + " line " + std::to_string(at + 1);
          break;
        }
        at -= t.lines.size();
      }
    }
    Formula before = line->formula;
    AtomMutator mut(rng, p.sig, pick(rng, static_cast<std::uint32_t>(count_atoms(before))));
    line->formula = mut.run(before);
    if (same_formula(line->formula, before)) {
      ++equivalent;
      continue;
    }
    bool kept = !check_proof(p).accepted;
    bool reloaded = rejected_after_reload(p);
    mutations.check(kept && reloaded, [&] {
      return where + " -> " + show(line->formula) + (kept ? "" : " accepted as is") +
             (reloaded ? "" : " accepted after reload");
    });
  }
  out.records.push_back(mutations.record("single-line mutations", "rejected (" + std::to_string(equivalent) +
                                                                       " alpha-equivalent mutations skipped)"));

  Tally deduction;
  for (const auto& [name, p] : corpus) {
    std::vector<Formula> discharge = p.sigma;
    if (discharge.empty()) discharge.push_back(parse_formula("exists x0 P0(x0)", p.sig));
    Formula goal = p.goal ? *p.goal : p.lines.back().formula;
    for (const auto& phi : discharge) {
      Proof d = apply_deduction(p, phi);
      CheckResult r = check_proof(d);
      bool shape = same_formula(d.lines.back().formula, Formula::implication(phi, goal));
      bool spot = true;
      for (const auto& t : d.templates) spot = spot && spot_check_template(t, context_of(d), 3).passed;
      bool templates = d.templates.size() == p.templates.size();
      deduction.check(r.accepted && shape && spot && templates, [&] {
        return name + " discharging " + show(phi) + ": " + (r.accepted ? "shape or templates wrong" : r.reason);
      });
    }
  }
  out.records.push_back(deduction.record("deduction transform", "outputs accepted"));

  Tally layout;
  Tally spot;
  for (const auto& [name, p] : corpus) {
    if (p.templates.empty()) continue;
    Proof q = p;
    std::reverse(q.templates.begin(), q.templates.end());
    q.templates.push_back(q.templates.front());
    q.templates.back().id += "_copy";
    CheckResult a = check_proof(p);
    CheckResult b = check_proof(q);
    layout.check(a.accepted == b.accepted && a.reason == b.reason, [&] { return name; });
    for (const auto& t : p.templates) {
      SpotCheck s = spot_check_template(t, context_of(p), 10);
      spot.check(s.passed && s.reason == "evidence(10)", [&] { return name + ": " + s.reason; });
    }
  }
  out.records.push_back(layout.record("template table layout", "verdicts unchanged"));
  out.records.push_back(spot.record("corpus templates spot-checked", "at evidence(10)"));

  Proof bad = nonuniform_proof();
  CheckResult verdict = check_proof(bad);
  out.records.push_back({"non-uniform template rejected", !verdict.accepted, verdict.reason});
  SpotCheck s = spot_check_template(bad.templates.front(), context_of(bad), 10);
  out.records.push_back({"non-uniform template spot-check", !s.passed && s.failing_n == std::optional<std::uint64_t>(7),
                         s.reason});

  out.summary = std::to_string(mutations.pass) + "/" + std::to_string(mutations.total()) +
                " mutations rejected; " + std::to_string(deduction.pass) + "/" + std::to_string(deduction.total()) +
                " deductions accepted";
  return out;
}

const std::map<std::string, std::function<SuiteResult(std::uint64_t)>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(std::uint64_t)>> suites = {
      {"soundness", soundness}, {"rules", rules},       {"collapse", collapse}, {"weakso", weakso},
      {"dsl-orbits", dsl_orbits}, {"lemma-reg", lemma_reg}, {"rs", rs},             {"kernel", kernel},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"soundness", "rules",     "collapse", "weakso",
                                                 "dsl-orbits", "lemma-reg", "rs",       "kernel"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  auto it = registry().find(name);
  if (it == registry().end()) throw PreconditionError("unknown suite '" + name + "'");
  auto start = std::chrono::steady_clock::now();
  SuiteResult r = it->second(options.seed);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.name = name;
  r.seed = options.seed;
  return r;
}

}  // namespace rsol::cli
