#include <gtest/gtest.h>

#include <random>

#include "eqchar/galois_ring.hpp"

using namespace eqchar;

namespace {

using G = GaloisRingElement;

G element(std::int64_t m, std::initializer_list<std::pair<std::int64_t, Rational>> terms)
{
    G x(m);
    for (const auto& [u, c] : terms) {
        x.add_term(u, c);
    }
    return x;
}

G random_element(std::mt19937_64& rng, std::int64_t m)
{
    G x(m);
    for (std::int64_t u = 1; u < m; ++u) {
        if (gcd(u, m) == 1 && rng() % 2 == 0) {
            x.add_term(u, Rational(std::int64_t(rng() % 21) - 10, std::int64_t(rng() % 4) + 1));
        }
    }
    return x;
}

std::vector<std::int64_t> odd_primes_below(std::int64_t n, std::int64_t from = 3)
{
    std::vector<std::int64_t> out;
    for (std::int64_t l = from; l < n; ++l) {
        if (is_prime(l)) {
            out.push_back(l);
        }
    }
    return out;
}

} // namespace

TEST(GaloisRing, BasicProducts)
{
    EXPECT_EQ(G::sigma(5, 2) * G::sigma(5, 3), G::one(5));
    G x = element(5, {{1, 1}, {3, 1}});
    EXPECT_EQ(x + G(5), x);
    EXPECT_EQ(x * x, element(5, {{1, 1}, {3, 2}, {4, 1}}));
    EXPECT_EQ(G::sigma_inverse(5, 2), G::sigma(5, 3));
    EXPECT_EQ(apply_sigma(2, x), G::sigma(5, 2) * x);
    EXPECT_THROW(G::sigma(9, 3), InvalidInput);
    EXPECT_THROW(G::one(5) + G::one(7), InvalidInput);
    EXPECT_THROW(G::one(5) * G::one(7), InvalidInput);
}

TEST(GaloisRing, RingAxiomsAndAugmentation)
{
    std::mt19937_64 rng(2024);
    for (std::int64_t m : {5, 7, 9, 15, 25, 27, 101}) {
        for (int k = 0; k < 20; ++k) {
            G x = random_element(rng, m), y = random_element(rng, m), z = random_element(rng, m);
            ASSERT_EQ((x * y) * z, x * (y * z));
            ASSERT_EQ(x * (y + z), x * y + x * z);
            ASSERT_EQ(x * y, y * x);
            ASSERT_EQ(G::one(m) * x, x);
            ASSERT_EQ(x - x, G(m));
            ASSERT_EQ((x * y).augmentation(), x.augmentation() * y.augmentation());
            ASSERT_EQ((x + y).augmentation(), x.augmentation() + y.augmentation());
        }
    }
}

TEST(GaloisRing, Stickelberger)
{
    G theta = stickelberger(5);
    EXPECT_EQ(theta, Rational(1, 5) * element(5, {{1, 1}, {2, 3}, {3, 2}, {4, 4}}));
    for (std::int64_t l : odd_primes_below(50)) {
        G lt = stickelberger_integral(l);
        ASSERT_TRUE(lt.is_integral());
        ASSERT_EQ(lt.augmentation(), Rational(l * (l - 1) / 2));
        G all(l);
        for (std::int64_t u = 1; u < l; ++u) {
            all.add_term(u, 1);
        }
        ASSERT_EQ((G::one(l) + G::sigma(l, l - 1)) * lt, Rational(l) * all) << l;
    }
    EXPECT_THROW(stickelberger(9), InvalidInput);
}

TEST(GaloisRing, SSums)
{
    EXPECT_EQ(s_sum(5, 1), element(5, {{1, 1}, {3, 2}}));
    EXPECT_EQ(s_sum(5, 0), element(5, {{1, 1}, {3, 1}}));
    EXPECT_EQ(s_sum(5, 2), element(5, {{1, 1}, {3, 4}}));
    EXPECT_THROW(s_sum(15, 1), InvalidInput);
}

TEST(GaloisRing, BSums)
{
    EXPECT_EQ(b_sum(7, 1, 1, 1), stickelberger(7));
    EXPECT_EQ(b_sum(5, 1, 1, 2), apply_sigma(2, stickelberger(5)));
    G expected = Rational(1, 3) * element(9, {{1, 1}, {4, 1}, {7, 1}}) + Rational(2, 3) * element(9, {{2, 1}, {5, 1}, {8, 1}});
    EXPECT_EQ(b_sum(3, 2, 1, 1), expected);
    EXPECT_EQ(b_sum(3, 2, 1, 1), trace_lift(stickelberger(3), 9));
    EXPECT_THROW(b_sum(3, 1, 2, 1), InvalidInput);
    EXPECT_THROW(b_sum(3, 2, 1, 3), InvalidInput);
    // s = t: sigma_u times the level-l^s Stickelberger element
    for (std::int64_t u : {1, 2, 4, 5, 7, 8}) {
        EXPECT_EQ(b_sum(3, 2, 2, u), apply_sigma(u, stickelberger_level(3, 2)));
    }
}

TEST(GaloisRing, BSumFactorisationForAllSmallLevels)
{
    int checked = 0;
    for (std::int64_t l : odd_primes_below(244)) {
        for (unsigned s = 1; ipow(l, s) <= 243; ++s) {
            for (unsigned t = 1; t <= s; ++t) {
                std::int64_t mt = ipow(l, t);
                for (std::int64_t u = 1; u < mt; ++u) {
                    if (u % l != 0) {
                        ASSERT_TRUE(verify_b_sum_factorization(l, s, t, u)) << l << " " << s << " " << t << " " << u;
                        ++checked;
                    }
                }
            }
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(GaloisRing, StickelbergerIdentitiesForSmallPrimes)
{
    for (std::int64_t l : odd_primes_below(200, 5)) {
        StickelbergerIdentityReport r = verify_stickelberger_identities(l);
        EXPECT_TRUE(r.s0_identity) << l;
        EXPECT_TRUE(r.s1_identity) << l;
        EXPECT_TRUE(r.square_sum_identity) << l;
        EXPECT_TRUE(r.all_pass()) << l;
    }
    EXPECT_THROW(verify_stickelberger_identities(3), InvalidInput);
    EXPECT_THROW(verify_stickelberger_identities(21), InvalidInput);
}

// At l = 5: (2 sigma_4 - sigma_3) theta = sigma_1 + sigma_3 by hand.
TEST(GaloisRing, FirstIdentityByHandAtFive)
{
    G lhs = (Rational(2) * G::sigma(5, 4) - G::sigma(5, 3)) * stickelberger(5);
    EXPECT_EQ(lhs, element(5, {{1, 1}, {3, 1}}));
}

// The auxiliary equality 2 sigma_2^{-1} theta = theta + sigma_{(l-1)/2}^{-1} s_0
// does not hold; it is reported separately and not counted as a failure.
TEST(GaloisRing, IntermediateDisplayIsRecordedNotRequired)
{
    StickelbergerIdentityReport r = verify_stickelberger_identities(5);
    EXPECT_FALSE(r.intermediate_display);
    EXPECT_TRUE(r.all_pass());
}
