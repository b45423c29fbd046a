#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rsol/definability.hpp"
#include "rsol/error.hpp"
#include "rsol/evaluation.hpp"
#include "rsol/leibniz.hpp"
#include "rsol/parser.hpp"
#include "rsol/theta.hpp"
#include "rsol/truth_algebra.hpp"

using namespace rsol;

namespace {

FiniteStructure unary(std::uint32_t n, std::vector<Tuple> p0) {
  FiniteStructure s = FiniteStructure::blank(parse_signature("P0/1"), n);
  for (const auto& t : p0) s.predicates[0].insert(t);
  return s;
}

FiniteStructure pure(std::uint32_t n) { return FiniteStructure::blank(parse_signature(""), n); }

const char* kSingletons = "forall x exists X forall y (X(y) <-> x = y)";

std::set<Relation> as_set(const std::vector<Relation>& rs) { return {rs.begin(), rs.end()}; }

}  // namespace

TEST(EvalFo, AtomUnderAssignment) {
  FiniteStructure s = unary(2, {{0}});
  Assignment a;
  a.individuals[Variable::individual(0)] = 0;
  EXPECT_TRUE(eval_fo(s, parse_formula("P0(x0)", s.sig), a));
  EXPECT_FALSE(eval_fo(s, parse_formula("forall x0 P0(x0)", s.sig)));
}

TEST(EvalFo, CardinalitySentence) {
  Formula f = parse_formula("exists x0 forall x1 x0 = x1", parse_signature(""));
  EXPECT_TRUE(eval_fo(pure(1), f));
  EXPECT_FALSE(eval_fo(pure(2), f));
}

TEST(EvalFo, UnassignedVariableIsAnError) {
  FiniteStructure s = unary(2, {{0}});
  EXPECT_THROW(eval_fo(s, parse_formula("P0(x0)", s.sig)), EvaluationError);
}

TEST(EvalFullSo, Examples) {
  FiniteStructure s = unary(2, {{0}});
  EXPECT_TRUE(eval_full_so(s, parse_formula(kSingletons, s.sig)));
  Assignment a;
  a.individuals[Variable::individual(0)] = 1;
  EXPECT_FALSE(eval_full_so(s, parse_formula("P0(x0)", s.sig), a));
  EXPECT_FALSE(eval_full_so(s, parse_formula("forall X0 forall x0 X0(x0)", s.sig)));
  EXPECT_TRUE(eval_full_so(s, parse_formula("exists X forall y ~X(y)", s.sig)));
}

TEST(EvalFullSo, GuardsLargeArities) {
  EXPECT_THROW(eval_full_so(pure(5), parse_formula("exists X^2 X^2 = X^2", parse_signature(""))), FeasibilityError);
}

TEST(Materialize, WeakSoOnThreeElementsGivesNonemptySubsets) {
  FiniteStructure s = pure(3);
  auto fam = make_weak_so(s.sig, 1);
  // Oracle: every parameter triple of θ2 and every shorter member.
  std::set<Relation> want;
  for (std::size_t len = 1; len <= 3; ++len) {
    for (const auto& params : oracle::all_tuples(3, static_cast<std::uint32_t>(len))) {
      Relation r(1, 3);
      for (Element y : params) r.insert({y});
      want.insert(r);
    }
  }
  auto got = as_set(materialize_k(s, *fam, 2, 1).relations(1));
  EXPECT_EQ(got, want);
  EXPECT_EQ(got.size(), 7u);
}

TEST(Materialize, DslOnPureIdentityGivesEmptyAndFull) {
  FiniteStructure s = pure(2);
  auto got = as_set(materialize_k(s, *make_dsl(s.sig), 60, 1).relations(1));
  EXPECT_EQ(got, (std::set<Relation>{Relation(1, 2), Relation::full(1, 2)}));
}

TEST(Materialize, ProvenanceReproducesTheRelation) {
  FiniteStructure s = unary(3, {{0}, {2}});
  auto fam = make_all_fo(s.sig);
  DefinableFamily k = materialize_k(s, *fam, 20, 1);
  for (const auto& d : k.by_arity.at(1)) {
    ASSERT_EQ(d.provenance.source, Provenance::Source::theta);
    EXPECT_EQ(define_relation(s, fam->at(1, d.provenance.theta_index), d.provenance.params), d.relation);
  }
}

TEST(Automorphisms, SmallCases) {
  EXPECT_EQ(automorphisms(pure(2)).size(), 2u);
  EXPECT_EQ(automorphisms(unary(2, {{0}})).size(), 1u);
  FiniteStructure cycle = FiniteStructure::blank(parse_signature("P0/2"), 3);
  for (Element a = 0; a < 3; ++a) cycle.predicates[0].insert({a, (a + 1) % 3});
  auto got = automorphisms(cycle);
  auto want = oracle::automorphisms(cycle);
  EXPECT_EQ(got.size(), 3u);
  EXPECT_EQ(std::set(got.begin(), got.end()), std::set(want.begin(), want.end()));
}

TEST(Orbits, PureTwoElementStructure) {
  auto none = as_set(k_exact_orbits(pure(2), false, 1).relations(1));
  EXPECT_EQ(none, as_set(oracle::invariant_relations(pure(2), 1)));
  EXPECT_EQ(none.size(), 2u);
  auto with = k_exact_orbits(pure(2), true, 1).relations(1);
  EXPECT_EQ(as_set(with), as_set(oracle::all_relations(2, 1)));
}

TEST(Orbits, RigidStructureDefinesEverything) {
  FiniteStructure s = unary(2, {{0}});
  EXPECT_EQ(k_exact_orbits(s, false, 1).size(1), 4u);
}

TEST(Orbits, BinaryOrbitsMatchBruteForce) {
  FiniteStructure path = FiniteStructure::blank(parse_signature("P0/2"), 3);
  path.predicates[0].insert({0, 1});
  path.predicates[0].insert({1, 2});
  path.predicates[0].insert({1, 0});
  path.predicates[0].insert({2, 1});
  EXPECT_EQ(as_set(k_exact_orbits(path, false, 2).relations(2)), as_set(oracle::invariant_relations(path, 2)));
}

TEST(EvalSo, SingletonsUnderTwoFamilies) {
  FiniteStructure s = pure(2);
  Formula f = parse_formula(kSingletons, s.sig);
  EXPECT_FALSE(eval_so(make_model(s, orbit_provider(s, false)), f));
  EXPECT_TRUE(eval_so(make_model(s, bounded_provider(s, make_weak_so(s.sig, 1), 2)), f));
}

TEST(EvalSo, RangeIsReflexive) {
  FiniteStructure s = unary(3, {{1}});
  Formula f = parse_formula("forall X0 exists X1 X0 = X1", s.sig);
  for (const auto& fam : {make_weak_so(s.sig, 1), make_dsl(s.sig), make_all_fo(s.sig)}) {
    EXPECT_TRUE(eval_so(make_model(s, exact_provider(s, *fam)), f)) << fam->name();
  }
}

TEST(EvalSo, FreeRelationOutsideKIsAnError) {
  FiniteStructure s = pure(2);
  Assignment a;
  Relation single(1, 2);
  single.insert({0});
  a.relations[Variable::relation(0, 1)] = single;
  EXPECT_THROW(eval_so(make_model(s, orbit_provider(s, false)), parse_formula("X0(x0)", s.sig), a),
               EvaluationError);
}

TEST(TruthAlgebra, ClassesFollowTheOrder) {
  FiniteStructure s = unary(2, {{0}});
  TruthAlgebra ta(make_model(s, orbit_provider(s, true)), 2);
  Formula p = parse_formula("P0(x0) & P0(x1)", s.sig);
  Formula q = parse_formula("P0(x0)", s.sig);
  EXPECT_TRUE(ta.leq(p, q));
  EXPECT_FALSE(ta.leq(q, p));
  EXPECT_EQ(ta.class_of(p).count(), 1u);
  EXPECT_EQ(ta.class_of(q).count(), 2u);
}

TEST(LemmaReg, ItemOneOnRigidStructure) {
  FiniteStructure s = unary(2, {{0}});
  LemmaCheck c = lemma_reg_check(s, 1, parse_formula("P0(x0)", s.sig), Variable::individual(0), LemmaItem::i,
                                 make_all_fo(s.sig), 4);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.lhs, c.rhs);
}

TEST(LemmaReg, ItemsThreeAndFiveAgreeOnWeakSo) {
  FiniteStructure s = pure(3);
  auto fam = make_weak_so(s.sig, 1);
  Formula phi = parse_formula("X0(x0)", s.sig);
  Variable v = Variable::relation(0, 1);
  LemmaCheck three = lemma_reg_check(s, 1, phi, v, LemmaItem::iii, fam, 3);
  LemmaCheck five = lemma_reg_check(s, 1, phi, v, LemmaItem::v, fam, 3);
  EXPECT_TRUE(three.holds);
  EXPECT_TRUE(five.holds);
  // Set-theoretically: no x0 lies in every nonempty subset.
  EXPECT_EQ(three.lhs, five.lhs);
  EXPECT_EQ(three.lhs, "{}");
  LemmaCheck four = lemma_reg_check(s, 1, phi, v, LemmaItem::iv, fam, 3);
  LemmaCheck six = lemma_reg_check(s, 1, phi, v, LemmaItem::vi, fam, 3);
  EXPECT_TRUE(four.holds);
  EXPECT_TRUE(six.holds);
  EXPECT_EQ(four.lhs, six.lhs);
}

TEST(Leibniz, SeparatedRigidStructureIsFixed) {
  FiniteStructure s = FiniteStructure::blank(parse_signature("P0/1 P1/1"), 3);
  s.predicates[0].insert({0});
  s.predicates[1].insert({1});
  auto r = leibniz_reduce(s, 4);
  EXPECT_EQ(r.block_of, (std::vector<Element>{0, 1, 2}));
  EXPECT_EQ(r.quotient.domain_size, 3u);
}

TEST(Leibniz, PureStructureCollapses) {
  for (std::uint32_t depth : {0u, 1u, 5u}) {
    auto r = leibniz_reduce(pure(2), depth);
    EXPECT_EQ(r.quotient.domain_size, 1u);
    EXPECT_EQ(r.block_of, (std::vector<Element>{0, 0}));
  }
}

TEST(StructureJson, RoundTrip) {
  FiniteStructure s = FiniteStructure::blank(parse_signature("P0/1 P1/2 f0/1 c1"), 3);
  s.predicates[0].insert({2});
  s.predicates[1].insert({0, 1});
  s.functions[0] = {1, 2, 0};
  s.constants[0] = 2;
  FiniteStructure t = parse_structure_json(structure_to_json(s));
  EXPECT_EQ(t.sig, s.sig);
  EXPECT_EQ(t.predicates, s.predicates);
  EXPECT_EQ(t.functions, s.functions);
  EXPECT_EQ(t.constants, s.constants);
}

TEST(StructureJson, RejectsBadData) {
  EXPECT_THROW(parse_structure_json(R"({"domain_size": 2, "predicates": {"P0": [[5]]}})"), Error);
  EXPECT_THROW(parse_structure_json("{"), Error);
}
