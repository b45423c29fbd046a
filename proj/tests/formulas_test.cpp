#include <gtest/gtest.h>

#include "rsol/error.hpp"
#include "rsol/formula.hpp"
#include "rsol/formula_enumeration.hpp"
#include "rsol/parser.hpp"
#include "rsol/substitution.hpp"
#include "rsol/theta.hpp"

using namespace rsol;

namespace {

const Signature kSig = parse_signature("P0/1 P1/2 c1");

Formula F(const std::string& text) { return parse_formula(text, kSig); }

std::string ascii(const Formula& f) {
  PrintOptions po;
  po.ascii = true;
  po.resugar = true;
  return print(f, po);
}

}  // namespace

TEST(Parse, SingletonSentenceHasOneSecondOrderExistential) {
  Formula f = parse_formula("∀x ∃X ∀y (X(y) ↔ x = y)", parse_signature(""));
  ASSERT_EQ(f.kind(), FormulaKind::forall);
  EXPECT_TRUE(f.var().is_individual());
  const Formula& ex = f.left();
  ASSERT_EQ(ex.kind(), FormulaKind::exists);
  EXPECT_TRUE(ex.var().is_relation());
  EXPECT_EQ(ex.var().arity, 1u);
  EXPECT_EQ(ex.left().kind(), FormulaKind::forall);
  EXPECT_EQ(ex.left().left().kind(), FormulaKind::biconditional);
  EXPECT_TRUE(is_sentence(f));
  EXPECT_FALSE(is_first_order(f));
}

TEST(Parse, AtomicPredicate) {
  Formula f = parse_formula("P0(x0)", parse_signature("P0/1"));
  EXPECT_EQ(f.kind(), FormulaKind::predicate);
  EXPECT_TRUE(f.is_atomic());
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0], Term::variable(0));
}

TEST(Parse, RelationVariableArityMismatch) {
  try {
    parse_formula("X2^1(x0, x1)", kSig);
    FAIL() << "accepted a binary use of a unary variable";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseErrorKind::arity_mismatch);
  }
}

TEST(Parse, PredicateArityMismatch) {
  EXPECT_THROW(parse_formula("P1(x0)", kSig), ParseError);
  EXPECT_THROW(parse_formula("P7(x0)", kSig), ParseError);
}

TEST(Parse, IdentityCanBeSwitchedOff) {
  try {
    parse_formula("x0 = x1", parse_signature("P0/1 -identity"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseErrorKind::identity_disabled);
  }
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_formula("P0(x0) & & P0(x1)", kSig);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseErrorKind::syntax);
    EXPECT_EQ(e.position(), 9u);
  }
}

TEST(Parse, QuantifierScopeAndAssociativity) {
  Formula f = F("forall x0 P0(x0) & P0(c0)");
  EXPECT_EQ(f.kind(), FormulaKind::conjunction);
  Formula g = F("P0(x0) -> P0(x1) -> P0(x2)");
  ASSERT_EQ(g.kind(), FormulaKind::implication);
  EXPECT_EQ(g.right().kind(), FormulaKind::implication);
}

TEST(Print, RoundTripOfNegatedConjunction) {
  Formula f = F("¬(P0(x0) ∧ P0(x1))");
  EXPECT_EQ(parse_formula(print(f), kSig), f);
  PrintOptions po;
  po.ascii = true;
  EXPECT_EQ(parse_formula(print(f, po), kSig), f);
}

TEST(Print, QuantifierChainRoundTrip) {
  Formula f = F("forall x0 forall x1 forall x2 (P1(x0, x1) & P1(x1, x2))");
  std::string text = print(f);
  EXPECT_LT(text.find("x0"), text.find("x2"));
  EXPECT_EQ(parse_formula(text, kSig), f);
}

TEST(Print, ExistsSugarBothWays) {
  Formula f = F("exists X0 X0(c0)");
  Formula n = normalize(f);
  EXPECT_TRUE(is_normalized(n));
  EXPECT_EQ(n.kind(), FormulaKind::negation);
  PrintOptions plain;
  PrintOptions sugar;
  sugar.resugar = true;
  EXPECT_TRUE(alpha_equal(parse_formula(print(n, plain), kSig), n));
  Formula back = parse_formula(print(n, sugar), kSig);
  EXPECT_EQ(back.kind(), FormulaKind::exists);
  EXPECT_TRUE(equivalent_modulo_sugar(back, f));
}

TEST(FreeVariables, SentencesHaveNone) {
  EXPECT_TRUE(is_sentence(F("forall X0 forall x0 X0(x0)")));
  EXPECT_FALSE(is_sentence(F("P0(x0)")));
}

TEST(FreeVariables, BoundIndividualFreeRelation) {
  auto fv = free_variables(F("forall x0 X0(x0)"));
  EXPECT_TRUE(fv.individuals.empty());
  EXPECT_EQ(fv.relations, (std::set<Variable>{Variable::relation(0, 1)}));
}

TEST(FreeVariables, EqualityOfTwoVariables) {
  auto fv = free_variables(F("x0 = x1"));
  EXPECT_EQ(fv.individuals, (std::set<Variable>{Variable::individual(0), Variable::individual(1)}));
  EXPECT_TRUE(fv.relations.empty());
}

TEST(FreeVariables, RelationQuantifierBindsOnlyItsVariable) {
  auto fv = free_variables(F("forall X0 (X0(x0) & X1(x0))"));
  EXPECT_EQ(fv.individuals, (std::set<Variable>{Variable::individual(0)}));
  EXPECT_EQ(fv.relations, (std::set<Variable>{Variable::relation(1, 1)}));
}

TEST(Substitution, PlainReplacement) {
  EXPECT_EQ(substitute_fo(F("P0(x0)"), Variable::individual(0), Term::variable(1)), F("P0(x1)"));
}

TEST(Substitution, CaptureForcesRenaming) {
  Formula out = substitute_fo(F("forall x1 x0 = x1"), Variable::individual(0), Term::variable(1));
  EXPECT_TRUE(alpha_equal(out, F("forall x2 x1 = x2")));
  EXPECT_TRUE(occurs_free(out, Variable::individual(1)));
  auto r = apply_substitution(F("forall x1 x0 = x1"), Substitution{{{Variable::individual(0), Term::variable(1)}}, {}, {}});
  EXPECT_FALSE(r.free_for);
}

TEST(Substitution, NoFreeOccurrenceLeavesFormula) {
  Formula f = F("forall x0 P0(x0)");
  EXPECT_EQ(substitute_fo(f, Variable::individual(0), Term::variable(5)), f);
}

TEST(Substitution, RelationVariableRenaming) {
  auto r = substitute_so(F("X0(x0)"), Variable::relation(0, 1), Variable::relation(1, 1));
  EXPECT_EQ(r.formula, F("X1(x0)"));
  EXPECT_TRUE(r.free_for);
}

TEST(Substitution, RelationCaptureAvoided) {
  auto r = substitute_so(F("forall X1 X0 = X1"), Variable::relation(0, 1), Variable::relation(1, 1));
  EXPECT_TRUE(alpha_equal(r.formula, F("forall X2 X1 = X2")));
  EXPECT_FALSE(r.free_for);
}

TEST(Substitution, ArityMismatchIsAnError) {
  EXPECT_THROW(substitute_so(F("X0(x0)"), Variable::relation(0, 1), Variable::relation(1, 2)), ArityError);
}

TEST(A6Instance, WeakSoMemberAddsParameterPrefix) {
  auto weak = make_weak_so(kSig, 1);
  Formula out = a6_instantiate(F("forall x0 X0(x0)"), Variable::relation(0, 1), weak->at(1, 0));
  EXPECT_TRUE(alpha_equal(out, F("forall x1 forall x0 x0 = x1"))) << ascii(out);
}

TEST(A6Instance, ParameterFreeMemberAddsNoPrefix) {
  ThetaMember p0{0, F("P0(x0)"), {Variable::individual(0)}, {}};
  Formula out = a6_instantiate(F("X0(x0) -> X0(x1)"), Variable::relation(0, 1), p0);
  EXPECT_TRUE(alpha_equal(out, F("P0(x0) -> P0(x1)"))) << ascii(out);
}

TEST(A6Instance, BoundVariableIsUntouched) {
  auto weak = make_weak_so(kSig, 1);
  Formula f = F("forall X0 X0(x0)");
  Formula out = a6_instantiate(f, Variable::relation(0, 1), weak->at(1, 0));
  // Only the (vacuous) parameter prefix may be added.
  Formula body = out;
  while (body.kind() == FormulaKind::forall && body.var().is_individual()) body = body.left();
  EXPECT_TRUE(alpha_equal(body, f)) << ascii(out);
}

TEST(PrefixClass, ExistsForall) {
  auto c = classify_prefix(F("exists x0 forall x1 (P0(x0) & P0(x1))"));
  EXPECT_EQ(c.exists_level, 2u);
}

TEST(PrefixClass, QuantifierFree) {
  auto c = classify_prefix(F("P0(x0) & ~P1(x0, c0)"));
  EXPECT_EQ(c.exists_level, 0u);
  EXPECT_EQ(c.forall_level, 0u);
}

TEST(PrefixClass, ThreeAlternationsFromForall) {
  auto c = classify_prefix(F("forall x0 exists x1 forall x2 (P1(x0, x1) | P0(x2))"));
  EXPECT_EQ(c.forall_level, 3u);
  EXPECT_EQ(c.exists_level, 4u);
}

TEST(Signature, ParseAndPrint) {
  Signature s = parse_signature("P0/1 P1/2 f0/1 c2");
  EXPECT_EQ(s.predicate_arities, (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(s.function_arities, (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(s.constant_count, 2u);
  EXPECT_EQ(parse_signature(to_string(s)), s);
  EXPECT_TRUE(parse_signature("").predicate_arities.empty());
}

TEST(Enumerator, CanonicalBindersGiveDistinctClasses) {
  FormulaEnumerator e(parse_signature("P0/1"));
  for (std::size_t size = 1; size <= 6; ++size) {
    const auto& fs = e.formulas(size, 1);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      EXPECT_EQ(formula_size(fs[i]), size);
      for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(alpha_equal(fs[i], fs[j]));
    }
  }
}
