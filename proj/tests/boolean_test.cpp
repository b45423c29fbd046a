#include <gtest/gtest.h>

#include <set>

#include "rsol/boolean.hpp"
#include "rsol/error.hpp"

using namespace rsol;

namespace {

using PS = PowersetAlgebra;

std::function<bool(const PS::Element&)> principal(std::uint32_t atom) {
  return [atom](const PS::Element& e) { return e.test(atom); };
}

Membership<PS::Element> principal_membership(std::uint32_t atom) { return {principal(atom), {}}; }

std::vector<PS::Element> singletons(const PS& alg) {
  std::vector<PS::Element> out;
  for (std::uint32_t i = 0; i < alg.atoms(); ++i) out.push_back(alg.atom(i));
  return out;
}

}  // namespace

TEST(Carriers, PowersetThree) {
  PS alg(3);
  EXPECT_EQ(alg.size(), std::optional<std::uint64_t>(8));
  EXPECT_EQ(singletons(alg).size(), 3u);
  EXPECT_THROW(parse_algebra_spec("powerset:6"), FeasibilityError);
}

TEST(Carriers, FreeTwoHasSixteenClasses) {
  FreeAlgebra alg(2);
  ASSERT_EQ(alg.size(), std::optional<std::uint64_t>(16));
  // Truth tables over two letters: 2^(2^2) distinct functions.
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < 16; ++i) seen.insert(alg.format(alg.element(i)));
  EXPECT_EQ(seen.size(), 16u);
  auto g0 = alg.generator(0);
  auto g1 = alg.generator(1);
  EXPECT_TRUE(alg.equal(alg.complement(alg.meet(g0, g1)), alg.join(alg.complement(g0), alg.complement(g1))));
  EXPECT_FALSE(alg.equal(g0, g1));
}

TEST(Carriers, FiniteCofiniteClosure) {
  FiniteCofiniteAlgebra alg;
  auto a = alg.parse("{1, 2}");
  auto ca = alg.complement(a);
  EXPECT_TRUE(ca.cofinite);
  EXPECT_EQ(ca.set, (std::vector<std::uint64_t>{1, 2}));
  auto m = alg.meet(alg.complement(alg.parse("{1}")), alg.complement(alg.parse("{5}")));
  EXPECT_TRUE(m.cofinite);
  EXPECT_EQ(m.set, (std::vector<std::uint64_t>{1, 5}));
  EXPECT_TRUE(alg.equal(alg.join(a, ca), alg.one()));
  EXPECT_EQ(alg.format(ca), "~{1, 2}");
}

TEST(Ultrafilter, PrincipalOnPowerset) {
  PS alg(3);
  EXPECT_TRUE(is_ultrafilter(alg, principal(0)));
  EXPECT_FALSE(is_ultrafilter(alg, [](const PS::Element&) { return true; }));
  // A proper filter that is not maximal.
  EXPECT_FALSE(is_ultrafilter(alg, [](const PS::Element& e) { return e.test(0) && e.test(1); }));
}

TEST(Ultrafilter, CofiniteOnSampledElements) {
  FiniteCofiniteAlgebra alg;
  EXPECT_TRUE(is_ultrafilter_sampled(alg, cofinite_ultrafilter().contains, 64));
  EXPECT_TRUE(is_ultrafilter_sampled(alg, principal_fincof(3).contains, 64));
  EXPECT_FALSE(is_ultrafilter_sampled(alg, [](const FinCofElement& e) { return !e.set.empty() || e.cofinite; }, 64));
}

TEST(Compatibility, CofiniteUltrafilterRefutesTheAtoms) {
  FiniteCofiniteAlgebra alg;
  auto r = check_f_compatible(alg, cofinite_ultrafilter(), fincof_atoms_entry(), 1000);
  EXPECT_EQ(r.verdict, Verdict::no);
  auto p = check_f_compatible(alg, principal_fincof(4), fincof_atoms_entry(), 1000);
  EXPECT_EQ(p.verdict, Verdict::yes);
  EXPECT_EQ(p.witness, std::optional<std::uint64_t>(4));
}

TEST(Compatibility, WithoutShapeDecisionTheAnswerIsInconclusive) {
  FiniteCofiniteAlgebra alg;
  Membership<FinCofElement> u{cofinite_ultrafilter().contains, {}};
  auto r = check_f_compatible(alg, u, fincof_atoms_entry(), 50);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_EQ(r.inspected, 50u);
  EXPECT_EQ(r.reason, "inconclusive(50)");
}

TEST(Compatibility, SingletonsJoinUnderPrincipal) {
  PS alg(3);
  auto e = finite_entry(EntryKind::join, singletons(alg), alg.one());
  auto r = check_f_compatible(alg, principal_membership(0), e, 10);
  EXPECT_EQ(r.verdict, Verdict::yes);
}

TEST(Compatibility, MeetWithBoundInsideNeedsNoInspection) {
  PS alg(3);
  auto e = finite_entry(EntryKind::meet, {alg.parse("{0, 1}"), alg.parse("{0, 2}")}, alg.parse("{0}"));
  auto r = check_f_compatible(alg, principal_membership(0), e, 10);
  EXPECT_EQ(r.verdict, Verdict::yes);
  EXPECT_EQ(r.inspected, 0u);
}

TEST(Construction, FiniteCofiniteAtomsDecidePrincipally) {
  FiniteCofiniteAlgebra alg;
  RsOptions opt;
  opt.steps = 50;
  auto u = rs_construct(alg, std::vector<RegularEntry<FinCofElement>>{fincof_atoms_entry()}, alg.zero(), opt);
  EXPECT_TRUE(alg.equal(u.chain.front(), alg.one()));
  ASSERT_FALSE(u.last().cofinite);
  ASSERT_EQ(u.last().set.size(), 1u);
  auto m = membership_of(alg, u);
  EXPECT_EQ(check_f_compatible(alg, m, fincof_atoms_entry(), 100).verdict, Verdict::yes);
  EXPECT_TRUE(is_ultrafilter_sampled(alg, m.contains, 64));
}

TEST(Construction, AvoidingOneIsRejected) {
  PS alg(2);
  EXPECT_THROW(rs_construct(alg, complete_regular_family(alg), alg.one(), RsOptions{}), PreconditionError);
}

TEST(Construction, BudgetExhaustionIsReported) {
  FiniteCofiniteAlgebra alg;
  RegularEntry<FinCofElement> odd;
  odd.kind = EntryKind::join;
  // Members {2n+1}; bound 1 is a lie the search cannot refute in budget.
  odd.member = [](std::uint64_t n) -> std::optional<FinCofElement> { return FinCofElement{false, {2 * n + 1}}; };
  odd.bound = alg.one();
  odd.label = "odds";
  RsOptions opt;
  opt.witness_budget = 20;
  auto small_odds = alg.parse("{1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35, 37, 39}");
  try {
    rs_construct(alg, std::vector<RegularEntry<FinCofElement>>{odd}, small_odds, opt);
    FAIL();
  } catch (const FeasibilityError& e) {
    EXPECT_NE(std::string(e.what()).find("odds"), std::string::npos);
  }
}

TEST(Construction, PowersetCompleteFamilyAvoidingAtomTwo) {
  PS alg(3);
  auto family = complete_regular_family(alg);
  ASSERT_EQ(family.size(), 512u);
  auto avoid = alg.parse("{2}");
  auto u = rs_construct(alg, family, avoid, RsOptions{});
  auto m = membership_of(alg, u);
  EXPECT_TRUE(is_ultrafilter(alg, m.contains));
  EXPECT_FALSE(m.contains(avoid));
  EXPECT_EQ(u.last().count(), 1u);
  for (const auto& e : family) EXPECT_EQ(check_f_compatible(alg, m, e, 100).verdict, Verdict::yes) << e.label;
}

TEST(Verify, ExactJoin) {
  PS alg(2);
  auto e = finite_entry(EntryKind::join, singletons(alg), alg.one());
  auto v = verify_entry(alg, e, 0);
  EXPECT_TRUE(v.ok);
  EXPECT_TRUE(v.exact);
  EXPECT_EQ(v.message, "exact");
}

TEST(Verify, InfiniteAtomsArePrefixVerified) {
  FiniteCofiniteAlgebra alg;
  for (std::uint64_t p : {0u, 7u, 100u}) {
    auto v = verify_entry(alg, fincof_atoms_entry(), p);
    EXPECT_TRUE(v.ok);
    EXPECT_EQ(v.message, "prefix-verified(" + std::to_string(p + 1) + ")");
  }
}

TEST(Verify, WrongClaimReportsTheIndex) {
  PS alg(2);
  auto e = finite_entry(EntryKind::join, singletons(alg), alg.parse("{0}"));
  auto v = verify_entry(alg, e, 0);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.violation, std::optional<std::uint64_t>(1));
}

TEST(FamilyText, GeneratorsAndLists) {
  PS alg(3);
  auto fam = parse_family(alg, "# demo\njoin : {0, 1} : [{0}, {1}]\nmeet : {} : [{0}, {1, 2}]\njoin : {0, 1, 2} : atoms\n");
  ASSERT_EQ(fam.size(), 3u);
  EXPECT_EQ(fam[2].count, std::optional<std::uint64_t>(3));
  EXPECT_EQ(parse_family(alg, "complete\n").size(), 512u);
  EXPECT_THROW(parse_family(alg, "join : {0} : [{0}, {1}]\n"), PreconditionError);
  EXPECT_THROW(parse_family(alg, "both : {0} : [{0}]\n"), ParseError);
}

TEST(AlgebraSpec, Names) {
  EXPECT_EQ(parse_algebra_spec("powerset:3").size, 3u);
  EXPECT_EQ(parse_algebra_spec("free:4").kind, AlgebraKind::free);
  EXPECT_EQ(parse_algebra_spec("fincof").kind, AlgebraKind::fincof);
  EXPECT_THROW(parse_algebra_spec("powerset:9"), Error);
}
