#include <gtest/gtest.h>

#include "rsol/calculus.hpp"
#include "rsol/error.hpp"
#include "rsol/parser.hpp"
#include "rsol/proof_io.hpp"
#include "rsol/theta.hpp"

using namespace rsol;

namespace {

const Signature kSig = parse_signature("P0/1 P1/2 c1");

Formula F(const std::string& text) { return parse_formula(text, kSig); }

KernelContext context(ThetaFamilyPtr fam) {
  KernelContext ctx;
  ctx.sig = kSig;
  ctx.theta = std::move(fam);
  return ctx;
}

const char* kSelfImpl = R"(signature: P0/1 P1/2 c1
theta: weak-so:1
template t1 over n : forall X0 forall x0 X0(x0) -> forall X0 forall x0 X0(x0) {
  1. forall X0 forall x0 X0(x0) -> forall ys0 forall x0 theta[n](x0; ys0) ; A6(n)
}
1. forall X0 forall x0 X0(x0) -> forall X0 forall x0 X0(x0) ; R3 t1
)";

const char* kModusPonens = R"(signature: P0/1 P1/2 c1
theta: dsl
sigma: P0(c0)
sigma: P0(c0) -> exists x0 P1(x0, c0)
1. P0(c0) ; premise 1
2. P0(c0) -> exists x0 P1(x0, c0) ; premise 2
3. exists x0 P1(x0, c0) ; MP 1 2
)";

}  // namespace

TEST(Recognize, ComprehensionForWeakSo) {
  auto m = recognize_axiom(F("forall y0 exists X forall x (X(x) <-> x = y0)"), context(make_weak_so(kSig, 1)));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->schema, Schema::A1);
  EXPECT_EQ(m->inst.theta_index, 0u);
}

TEST(Recognize, Extensionality) {
  auto m = recognize_axiom(F("forall X0 forall X1 (forall x (X0(x) <-> X1(x)) <-> X0 = X1)"),
                           context(make_dsl(kSig)));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->schema, Schema::A2);
}

TEST(Recognize, SelfInstance) {
  auto m = recognize_axiom(F("forall X0 X0(x0) -> X0(x0)"), context(make_dsl(kSig)));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->schema, Schema::A4);
}

TEST(Recognize, NonAxioms) {
  auto ctx = context(make_all_fo(kSig));
  EXPECT_FALSE(recognize_axiom(F("P0(c0)"), ctx));
  EXPECT_FALSE(recognize_axiom(F("forall x0 P0(x0) -> P0(c0) & P0(x1)"), ctx));
  // A5 needs V not free in the antecedent.
  Formula bad = F("forall X0 (X0(c0) -> X0(c0)) -> (X0(c0) -> forall X0 X0(c0))");
  auto shape = match_schema(Schema::A5, bad, ctx);
  ASSERT_TRUE(shape);
  EXPECT_TRUE(check_axiom(bad, Schema::A5, *shape, ctx).has_value());
  EXPECT_TRUE(match_schema(Schema::A5, F("forall X0 (P0(c0) -> X0(c0)) -> (P0(c0) -> forall X0 X0(c0))"), ctx));
}

TEST(Recognize, TautologiesBySkeleton) {
  auto ctx = context(make_dsl(kSig));
  auto m = recognize_axiom(F("(forall X0 X0(c0) -> P0(c0)) | ~(forall X0 X0(c0) -> P0(c0))"), ctx);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->schema, Schema::taut);
  EXPECT_FALSE(recognize_axiom(F("P0(c0) | ~P0(x0)"), ctx));
}

TEST(CheckProof, ModusPonensAccepted) {
  Proof p = parse_proof(kModusPonens);
  CheckResult r = check_proof(p);
  EXPECT_TRUE(r.accepted) << r.reason;
}

TEST(CheckProof, ForwardReferenceRejected) {
  Proof p = parse_proof(kModusPonens);
  p.lines[2].just = Justification::mp(0, 3);
  CheckResult r = check_proof(p);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.line, std::optional<std::size_t>(2));
  EXPECT_EQ(r.reason, "forward reference");
}

TEST(CheckProof, WrongPremiseRejected) {
  Proof p = parse_proof(kModusPonens);
  p.lines[0].just = Justification::premise_of(1);
  EXPECT_FALSE(check_proof(p).accepted);
}

TEST(CheckProof, GoalMustMatch) {
  Proof p = parse_proof(kModusPonens);
  p.goal = F("P0(c0)");
  EXPECT_FALSE(check_proof(p).accepted);
}

TEST(CheckProof, SelfImplicationThroughOmegaRule) {
  Proof p = parse_proof(kSelfImpl);
  CheckResult r = check_proof(p);
  EXPECT_TRUE(r.accepted) << r.reason;
  EXPECT_TRUE(check_template(p.templates[0], context_of(p)).accepted);
}

TEST(CheckProof, Deterministic) {
  Proof p = parse_proof(kSelfImpl);
  p.lines[0].formula = F("forall X0 forall x0 X0(x0) -> forall X0 X0(c0)");
  CheckResult a = check_proof(p);
  CheckResult b = check_proof(p);
  EXPECT_FALSE(a.accepted);
  EXPECT_EQ(a.reason, b.reason);
  EXPECT_EQ(a.line, b.line);
}

TEST(Template, CitingThetaStructureIsRejected) {
  const char* text = R"(signature: P0/1 P1/2 c1
theta: weak-so:1
template u over n : forall X0 X0(x0) -> forall X0 X0(x0) {
  1. theta[n](x0; ys0) ; E1
}
1. forall X0 X0(x0) -> forall X0 X0(x0) ; R3 u
)";
  Proof p = parse_proof(text);
  EXPECT_FALSE(check_template(p.templates[0], context_of(p)).accepted);
  CheckResult r = check_proof(p);
  EXPECT_FALSE(r.accepted);
  EXPECT_NE(r.reason.find("unchecked template u"), std::string::npos);
}

TEST(Template, InstancesCheckConcretely) {
  Proof p = parse_proof(kSelfImpl);
  KernelContext ctx = context_of(p);
  for (std::uint64_t n = 0; n <= 10; ++n) {
    Proof inst = instantiate_template(p.templates[0], ctx, n);
    CheckResult r = check_proof(inst);
    EXPECT_TRUE(r.accepted) << "n=" << n << ": " << r.reason;
  }
}

TEST(SpotCheck, EvidenceAndDegenerateBound) {
  Proof p = parse_proof(kSelfImpl);
  SpotCheck ten = spot_check_template(p.templates[0], context_of(p), 10);
  EXPECT_TRUE(ten.passed);
  EXPECT_EQ(ten.reason, "evidence(10)");
  SpotCheck zero = spot_check_template(p.templates[0], context_of(p), 0);
  EXPECT_TRUE(zero.passed);
  EXPECT_EQ(zero.checked, 1u);
}

TEST(SpotCheck, FailureAtSevenReported) {
  std::string members;
  for (int i = 0; i < 7; ++i) members += "x0 ; ; x0 = x0\n";
  members += "x0 ; ; P0(x0)\n";
  ProofReadOptions opt;
  opt.theta = parse_custom_family(members, kSig, "eq-then-p");
  const char* text = R"(signature: P0/1 P1/2 c1
template u over n : forall x0 x0 = x0 -> forall X0 forall x0 X0(x0) {
  1. theta[n](x0; ys0) ; E1
  2. forall x0 theta[n](x0; ys0) ; gen 1
  3. forall x0 theta[n](x0; ys0) -> forall x0 x0 = x0 -> forall x0 theta[n](x0; ys0) ; K
  4. forall x0 x0 = x0 -> forall x0 theta[n](x0; ys0) ; MP 2 3
  5. forall ys0 (forall x0 x0 = x0 -> forall x0 theta[n](x0; ys0)) ; gen 4
  6. forall ys0 (forall x0 x0 = x0 -> forall x0 theta[n](x0; ys0)) -> forall x0 x0 = x0 -> forall ys0 forall x0 theta[n](x0; ys0) ; Q2
  7. forall x0 x0 = x0 -> forall ys0 forall x0 theta[n](x0; ys0) ; MP 5 6
}
1. forall x0 x0 = x0 -> forall X0 forall x0 X0(x0) ; R3 u
)";
  Proof p = parse_proof(text, opt);
  SpotCheck s = spot_check_template(p.templates[0], context_of(p), 10);
  EXPECT_FALSE(s.passed);
  EXPECT_EQ(s.failing_n, std::optional<std::uint64_t>(7));
}

TEST(Deduction, PremiseBecomesSelfImplication) {
  Proof p = parse_proof(R"(signature: P0/1 P1/2 c1
theta: dsl
sigma: P0(c0)
1. P0(c0) ; premise 1
)");
  Proof d = apply_deduction(p, 0);
  EXPECT_TRUE(d.sigma.empty());
  CheckResult r = check_proof(d);
  EXPECT_TRUE(r.accepted) << r.reason;
  EXPECT_TRUE(same_formula(d.lines.back().formula, F("P0(c0) -> P0(c0)")));
}

TEST(Deduction, DischargingTheMinorPremise) {
  Proof p = parse_proof(kModusPonens);
  Proof d = apply_deduction(p, 0);
  ASSERT_EQ(d.sigma.size(), 1u);
  EXPECT_TRUE(same_formula(d.sigma[0], F("P0(c0) -> exists x0 P1(x0, c0)")));
  CheckResult r = check_proof(d);
  EXPECT_TRUE(r.accepted) << r.reason;
  EXPECT_TRUE(same_formula(d.lines.back().formula, F("P0(c0) -> exists x0 P1(x0, c0)")));
}

TEST(Deduction, OmegaRuleProofStaysAccepted) {
  Proof p = parse_proof(kSelfImpl);
  Formula phi = F("exists x0 P0(x0)");
  Proof d = apply_deduction(p, phi);
  CheckResult r = check_proof(d);
  EXPECT_TRUE(r.accepted) << r.reason;
  EXPECT_EQ(d.templates.size(), 1u);
  EXPECT_TRUE(same_formula(d.lines.back().formula, Formula::implication(phi, p.lines.back().formula)));
}

TEST(Deduction, Preconditions) {
  Proof p = parse_proof(kModusPonens);
  EXPECT_THROW(apply_deduction(p, F("P0(x0)")), PreconditionError);
  p.lines[2].formula = F("P0(c0)");
  EXPECT_THROW(apply_deduction(p, 0), PreconditionError);
}

TEST(ProofText, PrintParseRoundTrip) {
  for (const char* text : {kSelfImpl, kModusPonens}) {
    Proof p = parse_proof(text);
    Proof q = parse_proof(print_proof(p));
    ASSERT_EQ(p.lines.size(), q.lines.size());
    for (std::size_t i = 0; i < p.lines.size(); ++i) EXPECT_TRUE(same_formula(p.lines[i].formula, q.lines[i].formula));
    EXPECT_EQ(check_proof(q).accepted, check_proof(p).accepted);
  }
}

TEST(ProofText, ErrorsNameTheLine) {
  try {
    parse_proof("signature: P0/1 c1\nsigma: P0(c0)\n1. P0(c0) ; premise 1\n2. P0( ; MP 1 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_proof("signature: P0/1\n2. P0(x0) ; taut\n"), ParseError);
}

TEST(ProofText, SentencesFile) {
  auto fs = parse_sentences("forall x0 P0(x0)\n\nexists x0 P1(x0, c0)\n", kSig);
  EXPECT_EQ(fs.size(), 2u);
  EXPECT_THROW(parse_sentences("P0(x0)\n", kSig), PreconditionError);
}
