#include "inbl/oracle.hpp"

#include <gtest/gtest.h>

#include "inbl/collapse.hpp"
#include "inbl/dsl.hpp"
#include "inbl/errors.hpp"
#include "inbl/evaluator.hpp"
#include "random_exprs.hpp"

using namespace inbl;

namespace {

const char* kThreeStrings = "bits 4; R1_1*R2_0*R3_1*R4_0 + R1_0*R2_0*R3_1*R4_0 + R1_0*R2_1*R3_1*R4_0";
const char* kFourStrings =
    "bits 4; R1_1*R2_0*R3_1*R4_0 + R1_0*R2_0*R3_1*R4_0 + R1_0*R2_0*R3_0*R4_0 + R1_0*R2_1*R3_1*R4_0";

std::vector<std::string> strings_of(const Expansion& e) {
  std::vector<std::string> out;
  for (const auto& x : e.entries()) out.push_back(pattern_text(x.monomial, e.num_bits()));
  std::sort(out.begin(), out.end());
  return out;
}

SwitchState random_switches(std::mt19937_64& rng, std::uint32_t m) {
  SwitchState s(m);
  for (std::uint32_t k = 1; k <= m; ++k) {
    for (std::uint8_t v = 0; v <= 1; ++v) {
      if (rng() % 4 == 0) s.ground({k, v});
    }
  }
  return s;
}

}  // namespace

TEST(Expand, UniverseHasAllStrings) {
  const Expansion e = expand(build_universe(3), 3);
  EXPECT_EQ(e.size(), 8u);
  EXPECT_FALSE(e.has_non_unit_coefficients());
  EXPECT_TRUE(e.all_full());
  EXPECT_FALSE(e.non_canonical());
  for (int v = 0; v < 8; ++v) {
    std::string bits;
    for (int k = 0; k < 3; ++k) bits.push_back((v >> k) & 1 ? '1' : '0');
    EXPECT_EQ(member(e, Pattern::full(bits)), 1);
  }
}

TEST(Expand, OddIsUniverseMinusEven) {
  const Expansion e = expand(build_universe(3) - build_even(3), 3);
  EXPECT_EQ(strings_of(e), (std::vector<std::string>{"100", "101", "110", "111"}));
  EXPECT_FALSE(e.has_non_unit_coefficients());
  EXPECT_EQ(strings_of(expand(build_even(3), 3)), (std::vector<std::string>{"000", "001", "010", "011"}));
}

TEST(Expand, ConflictingMonomialIsDroppedAndFlagged) {
  const Expansion e = expand(Expr::ref({1, 0}) * Expr::ref({1, 1}), 1);
  EXPECT_TRUE(e.empty());
  EXPECT_TRUE(e.non_canonical());
  EXPECT_TRUE(expand(Expr::ref({1, 0}) * Expr::ref({1, 0}), 1).non_canonical());
}

TEST(Expand, LimitIsEnforced) {
  EXPECT_THROW(expand(build_universe(3), 25), OracleLimitExceeded);
  EXPECT_THROW(expand(build_universe(3), 3, 2), OracleLimitExceeded);
  EXPECT_NO_THROW(expand(build_universe(20), 20));
}

TEST(Expand, DumpFormat) {
  const Expansion e = expand(parse_dsl("bits 2; 2*R1_0*R2_1 - R1_1*R2_1 + R1_1").expr, 2);
  EXPECT_EQ(e.dump(), "01 2\n11 -1\n1x 1\n");
}

TEST(Member, ThreeStringSuperposition) {
  const Expansion e = expand(parse_dsl(kThreeStrings).expr, 4);
  EXPECT_EQ(member(e, Pattern::full("1010")), 1);
  EXPECT_EQ(member(e, Pattern::full("1111")), 0);
  EXPECT_EQ(member(e, Pattern::full("0110")), 1);
  EXPECT_EQ(member(expand(build_universe(6), 6), Pattern::full("101101")), 1);
}

TEST(Surviving, FragmentSelections) {
  const Pattern frag = Pattern::fragments("1=0,2=0,4=0", 4);
  EXPECT_EQ(strings_of(surviving(expand(parse_dsl(kFourStrings).expr, 4), frag)),
            (std::vector<std::string>{"0000", "0010"}));
  EXPECT_EQ(strings_of(surviving(expand(parse_dsl(kThreeStrings).expr, 4), frag)),
            (std::vector<std::string>{"0010"}));
  const Expansion e = expand(parse_dsl(kThreeStrings).expr, 4);
  EXPECT_EQ(surviving(e, Pattern(4)), e);
}

TEST(EvalViaExpansion, Basics) {
  ReferenceSystem sys(3, RtwScheme::Asymmetric, 5);
  EXPECT_TRUE(eval_via_expansion(Expansion(3, {}, false), sys, SwitchState(3), 9).is_zero());
  const Expansion single = expand(build_product_string(Pattern::full("100")), 3);
  for (std::uint64_t t = 0; t < 50; ++t) {
    EXPECT_EQ(eval_via_expansion(single, sys, SwitchState(3), t).abs(), Dyadic(1, -2));
  }
}

TEST(EvalViaExpansion, MatchesDagOnThreeStrings) {
  const Expr e = parse_dsl(kThreeStrings).expr;
  const Expansion x = expand(e, 4);
  ReferenceSystem sys(4, RtwScheme::Asymmetric, 404);
  Evaluator ev(e, sys);
  std::mt19937_64 rng(1);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::uint64_t clock = rng();
    EXPECT_EQ(ev.eval(clock), eval_via_expansion(x, sys, SwitchState(4), clock));
  }
}

TEST(LegalBellClass, Classification) {
  auto cls = [](const char* text) { return legal_bell_class(expand(parse_dsl(text).expr, 2)); };
  EXPECT_EQ(cls("bits 2; R1_0*R2_1 + R1_1*R2_0"), BellClass::S01_10);
  EXPECT_EQ(cls("bits 2; R1_0*R2_0 + R1_1*R2_1"), BellClass::S00_11);
  EXPECT_EQ(cls("bits 2; R1_1*R2_1"), BellClass::S11);
  EXPECT_EQ(cls("bits 2; R1_0*R2_0"), BellClass::S00);
  EXPECT_EQ(cls("bits 2; R1_0*R2_0 + R1_1*R2_0"), std::nullopt);
  EXPECT_EQ(cls("bits 2; 2*R1_0*R2_0"), std::nullopt);
  EXPECT_EQ(cls("bits 2; U"), std::nullopt);
  EXPECT_EQ(legal_bell_class(expand(build_universe(3), 3)), std::nullopt);
}

// expand(A + B) is the entrywise sum; expand(A * B) over disjoint supports is
// the convolution.
TEST(Expand, Linearity) {
  fixtures::ExprGenerator gen(8);
  for (int i = 0; i < 200; ++i) {
    const Expr a = gen.factored(4);
    const Expr b = gen.factored(4);
    const Expansion ea = expand(a, 4), eb = expand(b, 4), es = expand(a + b, 4);
    for (const auto& entry : es.entries()) {
      const Pattern p = pattern_of(entry.monomial, 4);
      ASSERT_EQ(entry.coefficient, member(ea, p) + member(eb, p));
    }
    std::size_t nonzero = 0;
    for (std::uint64_t v = 0; v < 16; ++v) {
      const Pattern p = pattern_of({15, v}, 4);
      nonzero += (member(ea, p) + member(eb, p)) != 0;
    }
    ASSERT_EQ(nonzero, es.size());
  }
}

TEST(Expand, ProductOfDisjointSupportsIsConvolution) {
  const Expr a = parse_dsl("bits 4; R1_0*R2_1 - 2*R1_1*R2_1").expr;
  const Expr b = parse_dsl("bits 4; 3*R3_0*R4_0 + R3_1*R4_0").expr;
  const Expansion p = expand(a * b, 4);
  const Expansion ea = expand(a, 4), eb = expand(b, 4);
  ASSERT_EQ(p.size(), ea.size() * eb.size());
  for (const auto& x : ea.entries()) {
    for (const auto& y : eb.entries()) {
      const Monomial joint{x.monomial.mask | y.monomial.mask, x.monomial.values | y.monomial.values};
      EXPECT_EQ(member(p, pattern_of(joint, 4)), x.coefficient * y.coefficient);
    }
  }
}

// DAG evaluation equals expansion evaluation bit-exactly under random
// groundings.
TEST(EvalViaExpansion, RandomExprIdentity) {
  fixtures::ExprGenerator gen(2025);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % 10);
    const Expr e = gen.factored(m);
    const Expansion x = expand(e, m);
    ASSERT_FALSE(x.non_canonical());
    ReferenceSystem sys(m, i % 3 ? RtwScheme::Asymmetric : RtwScheme::Symmetric, rng());
    Evaluator ev(e, sys);
    for (int c = 0; c < 30; ++c) {
      const std::uint64_t t = rng() % 100000;
      const SwitchState s = random_switches(rng, m);
      ASSERT_EQ(ev.eval(s, t), eval_via_expansion(x, sys, s, t));
    }
  }
}

// The expansion's survivor set evaluates exactly like the DAG with the
// inverse wires grounded.
TEST(Surviving, SoundAgainstGroundedEvaluation) {
  fixtures::ExprGenerator gen(99);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng() % 7);
    const Expr e = gen.factored(m);
    const Expansion x = expand(e, m);
    const Pattern frag = gen.random_fragment(m);
    const Expansion kept = surviving(x, frag);
    for (const auto& entry : kept.entries()) ASSERT_NE(member(x, pattern_of(entry.monomial, m)), 0);
    ReferenceSystem sys(m, RtwScheme::Asymmetric, rng());
    Evaluator ev(e, sys);
    const SwitchState grounded = ground_inverse(frag, m);
    for (std::uint64_t t = 0; t < 20; ++t) {
      ASSERT_EQ(ev.eval(grounded, t), eval_via_expansion(kept, sys, SwitchState(m), t));
    }
  }
}
