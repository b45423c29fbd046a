#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rsol/boolean.hpp"
#include "rsol/calculus.hpp"
#include "rsol/definability.hpp"
#include "rsol/evaluation.hpp"
#include "rsol/formula_enumeration.hpp"
#include "rsol/leibniz.hpp"
#include "rsol/parser.hpp"
#include "rsol/random.hpp"
#include "rsol/substitution.hpp"
#include "rsol/truth_algebra.hpp"

using namespace rsol;

namespace {

const Signature kSig = parse_signature("P0/1 P1/2 c1");
const Signature kFunSig = parse_signature("P0/1 P1/2 f0/1 c1");

// Small hand-rolled generators on top of the library's random module.
struct Gen {
  Rng rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint32_t below(std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

  FiniteStructure structure(const Signature& sig, std::uint32_t max_domain) {
    return random_structure(rng, sig, 1 + below(max_domain), 0.15 + 0.7 * unit());
  }

  Formula formula(const Signature& sig, bool second_order, std::uint32_t depth = 4) {
    RandomFormulaOptions o;
    o.depth = depth;
    o.individual_vars = 3;
    o.second_order = second_order;
    o.relation_vars = 2;
    o.term_depth = sig.function_arities.empty() ? 0 : 1;
    return random_formula(rng, sig, o);
  }

  Formula sentence(const Signature& sig, bool second_order, std::uint32_t depth = 4) {
    return universal_closure(formula(sig, second_order, depth));
  }

  Term term(const Signature& sig, std::uint32_t vars) { return random_term(rng, sig, vars, 1); }

  Assignment assignment(const FiniteStructure& s, std::uint32_t vars) {
    Assignment a;
    for (std::uint32_t i = 0; i < vars; ++i) a.individuals[Variable::individual(i)] = below(s.domain_size);
    return a;
  }

  PowersetAlgebra::Element subset(const PowersetAlgebra& alg) { return alg.element(below(1u << alg.atoms())); }
};

constexpr int kRounds = 300;

std::string show(const Formula& f) {
  PrintOptions po;
  po.ascii = true;
  return print(f, po);
}

}  // namespace

TEST(Property, PrintParseRoundTrip) {
  Gen g(11);
  for (int i = 0; i < kRounds; ++i) {
    Formula f = g.formula(kFunSig, true);
    for (bool asc : {false, true}) {
      for (bool sugar : {false, true}) {
        PrintOptions po;
        po.ascii = asc;
        po.resugar = sugar;
        Formula back = parse_formula(print(f, po), kFunSig);
        if (sugar) {
          ASSERT_TRUE(equivalent_modulo_sugar(back, f)) << print(f, po);
        } else {
          ASSERT_TRUE(alpha_equal(back, f)) << print(f, po);
        }
      }
    }
  }
}

TEST(Property, FullSecondOrderAgreesWithNaiveEvaluator) {
  Gen g(12);
  for (int i = 0; i < kRounds; ++i) {
    FiniteStructure s = g.structure(kFunSig, 3);
    Formula f = g.sentence(kFunSig, true);
    ASSERT_EQ(eval_full_so(s, f), oracle::eval_full(s, f)) << show(f);
  }
}

TEST(Property, NormalizationPreservesTruth) {
  Gen g(13);
  for (int i = 0; i < kRounds; ++i) {
    FiniteStructure s = g.structure(kSig, 3);
    Formula f = g.sentence(kSig, true);
    Formula n = normalize(f);
    ASSERT_TRUE(is_normalized(n));
    ASSERT_EQ(oracle::eval_full(s, f), oracle::eval_full(s, n)) << show(f);
    ASSERT_TRUE(alpha_equal(alpha_normalize(alpha_normalize(f)), alpha_normalize(f)));
  }
}

TEST(Property, SubstitutionLemma) {
  Gen g(14);
  for (int i = 0; i < kRounds; ++i) {
    FiniteStructure s = g.structure(kFunSig, 3);
    Formula f = g.formula(kFunSig, false);
    Variable x = Variable::individual(g.below(3));
    Term t = g.term(kFunSig, 3);
    Assignment a = g.assignment(s, 3);
    Formula sub = substitute_fo(f, x, t);
    // Value of t under a, computed by evaluating t = z for each z.
    Assignment shifted = a;
    Element value = 0;
    for (Element z = 0; z < s.domain_size; ++z) {
      Assignment probe = a;
      probe.individuals[Variable::individual(9)] = z;
      if (eval_fo(s, Formula::equal(t, Term::variable(9)), probe)) value = z;
    }
    shifted.individuals[x] = value;
    ASSERT_EQ(eval_fo(s, sub, a), eval_fo(s, f, shifted)) << show(f) << " [" << to_string(x) << " := " << print(t)
                                                            << "]";
  }
}

TEST(Property, RelationSubstitutionMatchesReassignment) {
  Gen g(15);
  const Variable v0 = Variable::relation(0, 1);
  const Variable v1 = Variable::relation(1, 1);
  for (int i = 0; i < kRounds; ++i) {
    FiniteStructure s = g.structure(kSig, 3);
    Formula f = g.formula(kSig, true);
    auto rels = oracle::all_relations(s.domain_size, 1);
    Assignment a = g.assignment(s, 3);
    a.relations[v0] = rels[g.below(static_cast<std::uint32_t>(rels.size()))];
    a.relations[v1] = rels[g.below(static_cast<std::uint32_t>(rels.size()))];
    Formula sub = substitute_so(f, v0, v1).formula;
    Assignment shifted = a;
    shifted.relations[v0] = a.relations[v1];
    ASSERT_EQ(eval_full_so(s, sub, a), eval_full_so(s, f, shifted)) << show(f);
  }
}

TEST(Property, A6InstanceMatchesDefinedRelation) {
  Gen g(16);
  auto fam = make_all_fo(kSig);
  const Variable v0 = Variable::relation(0, 1);
  for (int i = 0; i < 150; ++i) {
    FiniteStructure s = g.structure(kSig, 3);
    RandomFormulaOptions o;
    o.depth = 3;
    o.individual_vars = 2;
    o.relation_vars = 1;
    o.term_depth = 0;
    Formula body = random_formula(g.rng, kSig, o);
    auto fv = free_variables(body);
    Formula f = Formula::forall(std::vector<Variable>(fv.individuals.begin(), fv.individuals.end()), body);
    ThetaMember theta = fam->at(1, g.below(30));
    // ∀ȳ φ[θ(·, ȳ)/V] holds iff φ holds with V := every relation θ defines.
    bool all = true;
    for (const auto& params : oracle::all_tuples(s.domain_size, static_cast<std::uint32_t>(theta.params.size()))) {
      Assignment a;
      a.relations[v0] = define_relation(s, theta, params);
      all = all && eval_full_so(s, f, a);
    }
    Formula inst = a6_instantiate(f, v0, theta);
    ASSERT_EQ(eval_full_so(s, inst), all) << show(f) << " / " << show(theta.formula);
  }
}

TEST(Property, PrenexPreservesTruthAndClass) {
  Gen g(17);
  for (int i = 0; i < kRounds; ++i) {
    FiniteStructure s = g.structure(kSig, 3);
    Formula f = g.sentence(kSig, false);
    Formula p = prenex(f);
    ASSERT_EQ(eval_fo(s, f), eval_fo(s, p)) << show(f);
    PrefixClass c = classify_prefix(f);
    EXPECT_LE(c.exists_level, c.forall_level + 1);
    EXPECT_LE(c.forall_level, c.exists_level + 1);
  }
}

TEST(Property, AutomorphismsAndOrbitsMatchBruteForce) {
  Gen g(18);
  for (int i = 0; i < 120; ++i) {
    FiniteStructure s = g.structure(i % 2 ? kSig : parse_signature("P0/1"), 4);
    auto got = automorphisms(s);
    auto want = oracle::automorphisms(s);
    ASSERT_EQ(std::set(got.begin(), got.end()), std::set(want.begin(), want.end()));
    auto k = k_exact_orbits(s, false, 1).relations(1);
    auto inv = oracle::invariant_relations(s, 1);
    ASSERT_EQ(std::set(k.begin(), k.end()), std::set(inv.begin(), inv.end()));
  }
}

TEST(Property, RankDefinableEqualsOrbitsAtHighRank) {
  Gen g(19);
  for (int i = 0; i < 60; ++i) {
    FiniteStructure s = g.structure(kSig, 4);
    auto got = rank_definable(s, s.domain_size + 1, 1).relations(1);
    auto want = oracle::invariant_relations(s, 1);
    ASSERT_EQ(std::set(got.begin(), got.end()), std::set(want.begin(), want.end()));
  }
}

TEST(Property, MaterializationIsMonotoneAndSound) {
  Gen g(20);
  for (int i = 0; i < 40; ++i) {
    FiniteStructure s = g.structure(kSig, 3);
    auto fam = i % 2 ? make_dsl(s.sig) : make_all_fo(s.sig);
    DefinableFamily small = materialize_k(s, *fam, 5, 1);
    DefinableFamily large = materialize_k(s, *fam, 15, 1);
    ASSERT_TRUE(large.includes(small));
    if (fam->kind() == ThetaKind::dsl) {
      auto inv = oracle::invariant_relations(s, 1);
      for (const auto& r : large.relations(1)) ASSERT_TRUE(std::find(inv.begin(), inv.end(), r) != inv.end());
    }
  }
}

TEST(Property, EvalSoMatchesNaiveEvaluatorOverTheSameRange) {
  Gen g(21);
  for (int i = 0; i < kRounds; ++i) {
    FiniteStructure s = g.structure(kSig, 3);
    auto fam = i % 3 == 0 ? make_weak_so(kSig, 1) : i % 3 == 1 ? make_dsl(kSig) : make_all_fo(kSig);
    StandardModel m = make_model(s, exact_provider(s, *fam));
    Formula f = g.sentence(kSig, true);
    ASSERT_EQ(eval_so(m, f), oracle::eval_with(s, f, m.range(1))) << fam->name() << " " << show(f);
  }
}

TEST(Property, FirstOrderBaseAxiomsAreValid) {
  Gen g(22);
  KernelContext ctx;
  ctx.sig = kFunSig;
  ctx.theta = make_dsl(kFunSig);
  const Variable x = Variable::individual(0);
  const Variable y = Variable::individual(1);
  for (int i = 0; i < kRounds; ++i) {
    FiniteStructure s = g.structure(kFunSig, 3);
    Formula a = g.formula(kFunSig, false, 3);
    Formula b = g.formula(kFunSig, false, 3);
    Formula c = g.formula(kFunSig, false, 3);
    Formula closed_a = Formula::forall(x, a);
    std::vector<Formula> instances = {
        Formula::implication(a, Formula::implication(b, a)),
        Formula::implication(Formula::implication(a, Formula::implication(b, c)),
                             Formula::implication(Formula::implication(a, b), Formula::implication(a, c))),
        Formula::implication(Formula::implication(Formula::negation(b), Formula::negation(a)),
                             Formula::implication(Formula::implication(Formula::negation(b), a), b)),
        Formula::implication(Formula::forall(x, a), substitute_fo(a, x, g.term(kFunSig, 3))),
        Formula::implication(Formula::forall(x, Formula::implication(closed_a, b)),
                             Formula::implication(closed_a, Formula::forall(x, b))),
        Formula::implication(Formula::equal(Term::variable(x), Term::variable(y)),
                             Formula::implication(a, substitute_fo(a, x, Term::variable(y)))),
    };
    for (std::size_t k = 0; k < instances.size(); ++k) {
      const Formula& f = instances[k];
      auto m = recognize_axiom(f, ctx);
      ASSERT_TRUE(m) << k << ": " << show(f);
      ASSERT_TRUE(oracle::eval_full(s, universal_closure(f))) << k << ": " << show(f);
    }
    Term t = g.term(kFunSig, 3);
    Formula refl = Formula::equal(t, t);
    ASSERT_TRUE(recognize_axiom(refl, ctx));
  }
}

TEST(Property, TruthAlgebraIsAHomomorphism) {
  Gen g(23);
  for (int i = 0; i < kRounds; ++i) {
    FiniteStructure s = g.structure(kSig, 3);
    TruthAlgebra ta(make_model(s, orbit_provider(s, true)), 2);
    RandomFormulaOptions o;
    o.depth = 3;
    o.individual_vars = 2;
    o.second_order = false;
    o.term_depth = 0;
    Formula p = random_formula(g.rng, kSig, o);
    Formula q = random_formula(g.rng, kSig, o);
    const auto& alg = ta.algebra();
    ASSERT_EQ(ta.class_of(Formula::conjunction(p, q)), alg.meet(ta.class_of(p), ta.class_of(q)));
    ASSERT_EQ(ta.class_of(Formula::disjunction(p, q)), alg.join(ta.class_of(p), ta.class_of(q)));
    ASSERT_EQ(ta.class_of(Formula::negation(p)), alg.complement(ta.class_of(p)));
    bool valid = oracle::eval_full(s, universal_closure(Formula::implication(p, q)));
    ASSERT_EQ(ta.leq(p, q), valid);
  }
}

TEST(Property, LemmaIdentitiesOnSampledTriples) {
  Gen g(24);
  const Variable v0 = Variable::relation(0, 1);
  for (int i = 0; i < 60; ++i) {
    FiniteStructure s = g.structure(kSig, 3);
    auto fam = i % 2 ? make_weak_so(kSig, 1) : make_all_fo(kSig);
    std::uint64_t bound = fam->kind() == ThetaKind::weak_so ? s.domain_size : 4;
    RandomFormulaOptions o;
    o.depth = 3;
    o.individual_vars = 2;
    o.relation_vars = 1;
    o.term_depth = 0;
    Formula phi = random_formula(g.rng, kSig, o);
    for (LemmaItem item : {LemmaItem::iii, LemmaItem::iv, LemmaItem::v, LemmaItem::vi}) {
      LemmaCheck c = lemma_reg_check(s, 2, phi, v0, item, fam, bound);
      ASSERT_TRUE(c.holds) << to_string(item) << " " << show(phi);
    }
  }
}

TEST(Property, LeibnizBlocksAreIndistinguishable) {
  Gen g(25);
  const Signature sig = parse_signature("P0/1 P1/2 -identity");
  for (int i = 0; i < 120; ++i) {
    FiniteStructure s = g.structure(sig, 4);
    auto r = leibniz_reduce(s, 4);
    // Brute force: a ~ b iff swapping a and b in any argument slot of any
    // atom never changes its truth.
    for (Element a = 0; a < s.domain_size; ++a) {
      for (Element b = 0; b < s.domain_size; ++b) {
        bool same = true;
        for (const auto& rel : s.predicates) {
          for (const auto& t : oracle::all_tuples(s.domain_size, rel.arity())) {
            for (std::size_t pos = 0; pos < t.size(); ++pos) {
              if (t[pos] != a) continue;
              Tuple u = t;
              u[pos] = b;
              if (rel.contains(t) != rel.contains(u)) same = false;
            }
          }
        }
        ASSERT_EQ(r.block_of[a] == r.block_of[b], same) << a << " " << b;
      }
    }
  }
}

TEST(Property, BooleanLawsOnPowersetAndFree) {
  Gen g(26);
  PowersetAlgebra ps(4);
  FreeAlgebra fr(3);
  for (int i = 0; i < kRounds; ++i) {
    auto x = g.subset(ps), y = g.subset(ps), z = g.subset(ps);
    ASSERT_EQ(ps.meet(x, ps.join(x, y)), x);
    ASSERT_EQ(ps.meet(x, ps.join(y, z)), ps.join(ps.meet(x, y), ps.meet(x, z)));
    ASSERT_EQ(ps.join(x, ps.complement(x)), ps.one());
    ASSERT_EQ(ps.parse(ps.format(x)), x);
    auto a = fr.element(g.below(256)), b = fr.element(g.below(256)), c = fr.element(g.below(256));
    ASSERT_TRUE(fr.equal(fr.join(a, fr.meet(b, c)), fr.meet(fr.join(a, b), fr.join(a, c))));
    ASSERT_TRUE(fr.equal(fr.meet(a, fr.complement(a)), fr.zero()));
  }
}

TEST(Property, ConstructionOnRandomFamilies) {
  Gen g(27);
  for (int i = 0; i < 200; ++i) {
    PowersetAlgebra alg(1 + g.below(4));
    std::vector<RegularEntry<PowersetAlgebra::Element>> fam;
    std::uint32_t entries = 1 + g.below(12);
    for (std::uint32_t e = 0; e < entries; ++e) {
      std::vector<PowersetAlgebra::Element> members;
      std::uint32_t n = g.below(4);
      auto j = alg.zero();
      auto m = alg.one();
      for (std::uint32_t k = 0; k < n; ++k) {
        members.push_back(g.subset(alg));
        j = alg.join(j, members.back());
        m = alg.meet(m, members.back());
      }
      bool join = g.below(2) == 0;
      fam.push_back(finite_entry(join ? EntryKind::join : EntryKind::meet, members, join ? j : m));
    }
    auto avoid = g.subset(alg);
    if (alg.equal(avoid, alg.one())) continue;
    auto u = rs_construct(alg, fam, avoid, RsOptions{});
    for (std::size_t k = 1; k < u.chain.size(); ++k) {
      ASSERT_TRUE(leq(alg, u.chain[k], u.chain[k - 1]));
      ASSERT_FALSE(is_zero(alg, u.chain[k]));
    }
    auto mem = membership_of(alg, u);
    ASSERT_TRUE(is_ultrafilter(alg, mem.contains));
    ASSERT_FALSE(mem.contains(avoid));
    ASSERT_EQ(u.last().count(), 1u);
    for (const auto& e : fam) ASSERT_EQ(check_f_compatible(alg, mem, e, 10).verdict, Verdict::yes);
  }
}
