#include <gtest/gtest.h>

#include "eqchar/modular.hpp"
#include "eqchar/random_cover.hpp"
#include "eqchar/resolvent.hpp"

using namespace eqchar;

namespace {

const SheafSpec structure{SheafKind::structure};
const SheafSpec canonical{SheafKind::canonical};
const SheafSpec half{SheafKind::canonical_half};

} // namespace

TEST(Resolvent, CoefficientExamples)
{
    for (std::int64_t e : {1, 3, 5, 9, 81}) {
        for (std::int64_t n = 0; n < e; ++n) {
            EXPECT_EQ(resolvent_coefficient(e, 0, n), Rational(n, e));
            EXPECT_EQ(resolvent_coefficient(e, e - 1, n), n == 0 ? Rational(0) : Rational(n, e) - 1);
            EXPECT_EQ(resolvent_coefficient(e, (e - 1) / 2, n), 2 * n < e ? Rational(n, e) : Rational(n, e) - 1);
        }
    }
    EXPECT_EQ(resolvent_coefficient(5, -3, 2), Rational(7, 5));
    EXPECT_THROW(resolvent_coefficient(5, 0, 5), InvalidInput);
    EXPECT_THROW(resolvent_coefficient(5, 0, -1), InvalidInput);
}

TEST(Resolvent, LagrangeOracleExamples)
{
    EXPECT_EQ(lagrange_valuation_oracle(5, 0, 2), Rational(2, 5));
    EXPECT_EQ(lagrange_valuation_oracle(5, 4, 3), Rational(-2, 5));
    EXPECT_EQ(lagrange_valuation_oracle(5, 4, 0), Rational(0));
    EXPECT_THROW(lagrange_valuation_oracle(5, 0, 7), InvalidInput);
}

TEST(Resolvent, CoefficientMatchesLagrangeOracleExhaustively)
{
    for (std::int64_t e = 1; e <= 99; e += 2) {
        for (std::int64_t d = -2 * e; d <= 2 * e; ++d) {
            for (std::int64_t n = 0; n < e; ++n) {
                ASSERT_EQ(resolvent_coefficient(e, d, n), lagrange_valuation_oracle(e, d, n))
                    << "e=" << e << " d=" << d << " n=" << n;
            }
        }
    }
}

TEST(Resolvent, ModularDivisors)
{
    CoverDatum c = build_cover({241, 5});
    for (std::int64_t a = 0; a < 5; ++a) {
        ResolventDivisor r = resolvent_divisor(c, structure, CharacterSpec::exponent(a));
        EXPECT_EQ(r["y0"], Rational(a, 5));
        EXPECT_EQ(r["yinf"], 0);
    }
    EXPECT_EQ(resolvent_divisor(c, half, CharacterSpec::exponent(3))["y0"], Rational(-2, 5));
    EXPECT_EQ(resolvent_divisor(c, half, CharacterSpec::exponent(4))["y0"], Rational(-1, 5));
    EXPECT_TRUE(resolvent_divisor(c, canonical, CharacterSpec::exponent(0)).is_zero());
}

TEST(Resolvent, CustomSheafNeedsCoefficient)
{
    CoverDatum c = build_cover({241, 5});
    EXPECT_THROW(resolvent_divisor(c, SheafSpec{SheafKind::custom}, CharacterSpec::exponent(1)), InvalidInput);
    c.components[0].d_custom = Integer(-3);
    EXPECT_EQ(resolvent_divisor(c, SheafSpec{SheafKind::custom}, CharacterSpec::exponent(2))["y0"], Rational(7, 5));
}

TEST(Resolvent, SheafKindNames)
{
    EXPECT_EQ(parse_sheaf_kind("canonical-half"), SheafKind::canonical_half);
    EXPECT_EQ(parse_sheaf_kind("canonical_half"), SheafKind::canonical_half);
    EXPECT_EQ(parse_sheaf_kind("structure"), SheafKind::structure);
    EXPECT_THROW(parse_sheaf_kind("omega"), InvalidInput);
}

TEST(Resolvent, SupportSets)
{
    CoverDatum c = build_cover({241, 5});
    for (std::int64_t a = 1; a < 5; ++a) {
        ResolventDivisor f = support_divisor(c, CharacterSpec::exponent(a), false);
        EXPECT_EQ(f.coeffs().size(), 1u);
        EXPECT_EQ(f["y0"], 1);
    }
    EXPECT_TRUE(support_divisor(c, CharacterSpec::exponent(0), false).is_zero());
    EXPECT_TRUE(support_divisor(c, CharacterSpec::exponent(2), true).is_zero());
    EXPECT_EQ(support_divisor(c, CharacterSpec::exponent(3), true)["y0"], 1);
}

TEST(Resolvent, TrivialCharacterGivesZeroDivisorForSmallCoefficients)
{
    CoverGenerator gen(3);
    for (int k = 0; k < 300; ++k) {
        CoverDatum c = gen.cover();
        for (auto& y : c.components) {
            y.d_custom = Integer(gen.uniform(0, y.e - 1));
        }
        for (SheafKind kind : {SheafKind::structure, SheafKind::canonical, SheafKind::canonical_half, SheafKind::custom}) {
            ASSERT_TRUE(resolvent_divisor(c, SheafSpec{kind}, CharacterSpec::exponent(0)).is_zero());
        }
    }
}

TEST(Resolvent, ConjugationIdentitiesOnRandomCovers)
{
    CoverGenerator gen(42);
    for (int k = 0; k < 1000; ++k) {
        CoverDatum c = gen.cover();
        CharacterSpec phi = gen.character(c);
        ConjugationIdentityReport r = check_conjugation_identities(c, phi);
        ASSERT_TRUE(r.structure_pair) << k;
        ASSERT_TRUE(r.half_antisymmetric) << k;
        ASSERT_TRUE(r.half_square) << k;
        ASSERT_TRUE(r.canonical_split) << k;
        ASSERT_TRUE(r.half_split) << k;
    }
}

TEST(Resolvent, GroupOrderClearsDenominators)
{
    CoverGenerator gen(8);
    for (int k = 0; k < 300; ++k) {
        CoverDatum c = gen.cover();
        CharacterSpec phi = gen.character(c);
        for (SheafKind kind : {SheafKind::structure, SheafKind::canonical, SheafKind::canonical_half, SheafKind::custom}) {
            ResolventDivisor r = resolvent_divisor(c, SheafSpec{kind}, phi);
            for (const auto& y : c.components) {
                Rational v = r[y.id];
                ASSERT_TRUE(is_integral(v * c.group_order));
                ASSERT_TRUE(is_integral(v * y.e));
                if (y.e == 1) {
                    ASSERT_EQ(v, 0);
                }
            }
        }
    }
}
