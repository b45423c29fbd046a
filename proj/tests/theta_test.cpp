#include <gtest/gtest.h>

#include <set>

#include "rsol/error.hpp"
#include "rsol/formula_enumeration.hpp"
#include "rsol/parser.hpp"
#include "rsol/theta.hpp"

using namespace rsol;

namespace {

const Signature kSig = parse_signature("P0/1 P1/2 c1");

Formula F(const std::string& text) { return parse_formula(text, kSig); }

bool free_vars_match(const ThetaMember& m) {
  auto fv = free_variables(m.formula);
  std::set<Variable> declared(m.slots.begin(), m.slots.end());
  declared.insert(m.params.begin(), m.params.end());
  return fv.individuals == declared && fv.relations.empty();
}

}  // namespace

TEST(WeakSo, MemberTwoIsThreeEqualities) {
  ThetaMember m = make_weak_so(kSig, 1)->at(1, 2);
  ASSERT_EQ(m.slots.size(), 1u);
  ASSERT_EQ(m.params.size(), 3u);
  Term x = Term::variable(m.slots[0]);
  Formula want = Formula::disjunction({Formula::equal(x, Term::variable(m.params[0])),
                                       Formula::equal(x, Term::variable(m.params[1])),
                                       Formula::equal(x, Term::variable(m.params[2]))});
  EXPECT_TRUE(equivalent_modulo_sugar(m.formula, want));
}

TEST(WeakSo, FirstTwoMembers) {
  auto ms = make_weak_so(kSig, 1)->enumerate_up_to(1, 1);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].params.size(), 1u);
  EXPECT_EQ(ms[1].params.size(), 2u);
  EXPECT_EQ(ms[0].formula.kind(), FormulaKind::equal);
}

TEST(WeakSo, BinaryMembersPairSlotsWithParameters) {
  ThetaMember m = make_weak_so(kSig, 2)->at(2, 1);
  EXPECT_EQ(m.arity(), 2u);
  EXPECT_EQ(m.params.size(), 4u);
  EXPECT_TRUE(free_vars_match(m));
  EXPECT_THROW(make_weak_so(kSig, 2)->at(1, 0), PreconditionError);
}

TEST(Dsl, MemberZeroIsTheSmallestOneVariableFormula) {
  // Brute force: atoms over the terms {x0, c0}, keeping those with x0 free.
  std::vector<Formula> atoms;
  std::vector<Term> terms = {Term::variable(0), Term::constant(0)};
  for (const auto& a : terms) {
    atoms.push_back(Formula::predicate(0, {a}));
    for (const auto& b : terms) {
      atoms.push_back(Formula::predicate(1, {a, b}));
      atoms.push_back(Formula::equal(a, b));
    }
  }
  std::size_t best = SIZE_MAX;
  std::vector<Formula> smallest;
  for (const auto& f : atoms) {
    auto fv = free_variables(f);
    if (fv.individuals != std::set<Variable>{Variable::individual(0)}) continue;
    if (formula_size(f) < best) {
      best = formula_size(f);
      smallest.clear();
    }
    if (formula_size(f) == best) smallest.push_back(f);
  }
  ASSERT_EQ(smallest.size(), 1u);
  ThetaMember m = make_dsl(kSig)->at(1, 0);
  EXPECT_TRUE(alpha_equal(m.formula, smallest[0]));
  EXPECT_EQ(formula_size(m.formula), best);
}

TEST(Dsl, FirstSixMembersAreDistinctAndParameterFree) {
  auto fam = make_dsl(kSig);
  EXPECT_TRUE(fam->parameter_free());
  auto ms = fam->enumerate_up_to(1, 5);
  ASSERT_EQ(ms.size(), 6u);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    EXPECT_TRUE(ms[i].params.empty());
    EXPECT_EQ(free_variables(ms[i].formula).individuals.size(), 1u);
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(alpha_equal(ms[i].formula, ms[j].formula));
  }
  // Sizes never decrease along the enumeration.
  for (std::size_t i = 1; i < ms.size(); ++i) EXPECT_LE(formula_size(ms[i - 1].formula), formula_size(ms[i].formula));
}

TEST(Dsl, OnlyUnary) {
  auto fam = make_dsl(kSig);
  EXPECT_TRUE(fam->supports_arity(1));
  EXPECT_FALSE(fam->supports_arity(2));
}

TEST(AllFo, MembersSplitFreeVariables) {
  auto fam = make_all_fo(kSig);
  for (std::uint32_t arity = 1; arity <= 2; ++arity) {
    for (const auto& m : fam->enumerate_up_to(arity, 40)) {
      EXPECT_EQ(m.arity(), arity);
      EXPECT_TRUE(free_vars_match(m)) << m.index;
      EXPECT_TRUE(is_first_order(m.formula));
    }
  }
}

TEST(AnyFamily, BoundZeroGivesOneMember) {
  for (const auto& fam : {make_weak_so(kSig, 1), make_dsl(kSig), make_all_fo(kSig), make_exists_n(kSig, 1)}) {
    EXPECT_EQ(fam->enumerate_up_to(1, 0).size(), 1u) << fam->name();
  }
}

TEST(PrefixFamilies, MembersLieInTheirClass) {
  auto e1 = make_exists_n(kSig, 1);
  auto a1 = make_forall_n(kSig, 1);
  for (const auto& m : e1->enumerate_up_to(1, 30)) EXPECT_LE(classify_prefix(m.formula).exists_level, 1u);
  for (const auto& m : a1->enumerate_up_to(1, 30)) EXPECT_LE(classify_prefix(m.formula).forall_level, 1u);
}

TEST(Custom, ParsedAndCyclic) {
  auto fam = parse_custom_family("# two members\nx0 ; x1 ; P0(x0) & x0 = x1\nx0 ; ; P0(x0)\n", kSig, "demo");
  EXPECT_EQ(fam->kind(), ThetaKind::custom);
  EXPECT_EQ(fam->at(1, 0).params.size(), 1u);
  EXPECT_TRUE(alpha_equal(fam->at(1, 3).formula, F("P0(x0)")));
  EXPECT_TRUE(alpha_equal(fam->at(1, 2).formula, fam->at(1, 0).formula));
}

TEST(Custom, FreeVariableInvariantEnforced) {
  EXPECT_THROW(parse_custom_family("x0 ; ; P1(x0, x1)\n", kSig), PreconditionError);
}

TEST(Spec, NamesRoundTrip) {
  for (std::string spec : {"weak-so:1", "dsl", "all-fo", "exists-n:2", "forall-n:1"}) {
    EXPECT_EQ(parse_theta_spec(spec, kSig)->name(), spec);
  }
  EXPECT_EQ(parse_theta_spec("weak-so", kSig)->kind(), ThetaKind::weak_so);
  EXPECT_THROW(parse_theta_spec("nonsense", kSig), Error);
}
