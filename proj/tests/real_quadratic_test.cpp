#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "eqchar/real_quadratic.hpp"

using namespace eqchar;

namespace {

// Wide classes as orbits of reduced forms under rho-cycles and
// (a, b, c) -> (-a, b, -c), counted by union-find over the form list.
std::int64_t wide_by_negation_merge(std::int64_t D)
{
    std::vector<QuadForm> all = forms::reduced_forms(Integer(D));
    std::map<QuadForm, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) {
        index[all[i]] = i;
    }
    std::vector<std::size_t> parent(all.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    Integer s = isqrt(Integer(D));
    for (std::size_t i = 0; i < all.size(); ++i) {
        parent[find(i)] = find(index.at(forms::rho(all[i], Integer(D), s)));
        parent[find(i)] = find(index.at(QuadForm{-all[i].a, all[i].b, -all[i].c}));
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < all.size(); ++i) {
        roots.insert(find(i));
    }
    return static_cast<std::int64_t>(roots.size());
}

// Norm of the fundamental unit from the continued fraction of sqrt(D).
int unit_norm_via_sqrt_fraction(std::int64_t D)
{
    std::int64_t a0 = static_cast<std::int64_t>(isqrt(Integer(D)));
    std::int64_t m = 0, d = 1, a = a0, period = 0;
    do {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        ++period;
    } while (a != 2 * a0);
    return period % 2 == 1 ? -1 : 1;
}

// Is +-4p = x^2 - l y^2 solvable? Searched over y up to a bound that covers
// a full unit period at these discriminants.
bool represents_four_p(std::int64_t l, std::int64_t p, std::int64_t y_max)
{
    for (std::int64_t y = 0; y <= y_max; ++y) {
        Integer ly2 = Integer(l) * y * y;
        for (int sign : {1, -1}) {
            Integer x2 = ly2 + sign * 4 * Integer(p);
            if (x2 >= 0 && is_square(x2)) {
                return true;
            }
        }
    }
    return false;
}

} // namespace

TEST(RealQuadratic, ClassNumbers)
{
    for (std::int64_t l : {5, 13, 17, 37, 101}) {
        EXPECT_EQ(class_group(l).wide_class_number, 1) << l;
    }
    EXPECT_EQ(class_group(229).wide_class_number, 3);
    EXPECT_EQ(class_group(401).wide_class_number, 5);
    EXPECT_EQ(class_group(401).narrow_class_number, 5);
    EXPECT_EQ(class_group(401).fundamental_unit_norm, -1);
    EXPECT_EQ(class_group(761).wide_class_number, 3);
    EXPECT_EQ(class_group(1129).wide_class_number, 9);
    EXPECT_THROW(class_group(7), InvalidInput);
    EXPECT_THROW(class_group(21), InvalidInput);
}

TEST(RealQuadratic, CyclesPartitionReducedForms)
{
    std::vector<QuadForm> all = forms::reduced_forms(Integer(401));
    std::size_t total = 0;
    std::set<QuadForm> seen;
    std::multiset<std::size_t> lengths;
    for (const auto& f : all) {
        if (seen.count(f)) {
            continue;
        }
        auto cyc = forms::cycle(f);
        for (const auto& g : cyc) {
            ASSERT_TRUE(forms::is_reduced(g, isqrt(Integer(401))));
            ASSERT_EQ(g.discriminant(), 401);
            seen.insert(g);
        }
        lengths.insert(cyc.size());
        total += cyc.size();
    }
    EXPECT_EQ(total, all.size());
    EXPECT_EQ(lengths, (std::multiset<std::size_t>{6, 6, 6, 10, 10}));
}

TEST(RealQuadratic, NarrowAndWideAgainstNegationMerge)
{
    ClassGroupSummary k221 = form_class_group(Integer(221));
    EXPECT_EQ(k221.narrow_class_number, 4);
    EXPECT_EQ(k221.wide_class_number, 2);
    EXPECT_EQ(k221.fundamental_unit_norm, 1);
    EXPECT_EQ(form_class_group(Integer(205)).wide_class_number, 2);
    EXPECT_EQ(form_class_group(Integer(185)).fundamental_unit_norm, -1);

    for (std::int64_t D = 5; D < 1500; D += 4) {
        if (is_square(Integer(D))) {
            continue;
        }
        // fundamental discriminants only: squarefree D = 1 (mod 4)
        bool squarefree = true;
        for (std::int64_t q = 2; q * q <= D; ++q) {
            squarefree = squarefree && D % (q * q) != 0;
        }
        if (!squarefree) {
            continue;
        }
        ClassGroupSummary k = form_class_group(Integer(D));
        ASSERT_EQ(k.wide_class_number, wide_by_negation_merge(D)) << D;
        ASSERT_EQ(k.fundamental_unit_norm, unit_norm_via_sqrt_fraction(D)) << D;
        ASSERT_TRUE(k.narrow_class_number == k.wide_class_number || k.narrow_class_number == 2 * k.wide_class_number);
        // N(eps) = -1 exactly when -x^2 + ... lies on the principal cycle
        FormClass one = FormClass::of(forms::principal_form(Integer(D)));
        ASSERT_EQ(one.contains(forms::negative_principal_form(Integer(D))), k.fundamental_unit_norm == -1) << D;
    }
}

TEST(RealQuadratic, CompositionGroupLaws)
{
    for (std::int64_t D : {229, 401, 761, 1129, 221, 205}) {
        FormClass one = FormClass::of(forms::principal_form(Integer(D)));
        std::vector<FormClass> classes;
        std::set<QuadForm> seen;
        for (const auto& f : forms::reduced_forms(Integer(D))) {
            if (!seen.count(f)) {
                FormClass c = FormClass::of(f);
                seen.insert(c.cycle.begin(), c.cycle.end());
                classes.push_back(c);
            }
        }
        std::int64_t narrow = static_cast<std::int64_t>(classes.size());
        for (const auto& x : classes) {
            ASSERT_EQ(compose(x, one), x);
            ASSERT_EQ(compose(x, conjugate_class(x)), one) << D;
            // order in the narrow group divides the narrow class number
            FormClass power = one;
            for (std::int64_t k = 0; k < narrow; ++k) {
                power = compose(power, x);
            }
            ASSERT_EQ(power, one) << D;
            for (const auto& y : classes) {
                ASSERT_EQ(compose(x, y), compose(y, x));
                for (const auto& z : classes) {
                    ASSERT_EQ(compose(compose(x, y), z), compose(x, compose(y, z)));
                }
            }
            // composition does not depend on the cycle representative
            for (const auto& f : x.cycle) {
                ASSERT_EQ(FormClass::of(forms::compose(f, classes.back().form)), compose(x, classes.back()));
            }
        }
    }
}

TEST(RealQuadratic, SplitPrimeClasses)
{
    EXPECT_TRUE(is_principal(split_prime_class(5, 241)));
    EXPECT_TRUE(is_principal(split_prime_class(5, 11)));
    FormClass beta = split_prime_class(401, 182857);
    EXPECT_FALSE(is_principal(beta));
    EXPECT_EQ(class_order(beta), 5);
    EXPECT_EQ(class_order(compose(beta, beta)), 5);
    EXPECT_TRUE(is_principal(compose(beta, conjugate_class(beta))));
    EXPECT_TRUE(is_principal(split_prime_class(401, 19249)));
    EXPECT_EQ(class_order(FormClass::of(forms::principal_form(Integer(401)))), 1);
    EXPECT_THROW(split_prime_class(401, 3), InvalidInput); // 401 = 2 mod 3: inert
    EXPECT_THROW(split_prime_class(401, 401), InvalidInput);
    EXPECT_THROW(split_prime_class(401, 100), InvalidInput);
}

TEST(RealQuadratic, PrincipalityAgainstNormEquation)
{
    // eps = 20 + sqrt(401); one unit period stays far below y_max.
    const std::int64_t y_max = 20000;
    EXPECT_TRUE(represents_four_p(401, 19249, y_max));
    EXPECT_FALSE(represents_four_p(401, 182857, y_max));
    for (std::int64_t p = 3; p < 4000; p += 2) {
        if (!is_prime(p) || p == 401 || legendre(401, p) != 1) {
            continue;
        }
        ASSERT_EQ(is_principal(split_prime_class(401, p)), represents_four_p(401, p, 3000)) << p;
    }
    for (std::int64_t p = 3; p < 3000; p += 2) {
        if (!is_prime(p) || p == 229 || legendre(229, p) != 1) {
            continue;
        }
        // eps for 229 = (15 + sqrt(229))/2
        ASSERT_EQ(is_principal(split_prime_class(229, p)), represents_four_p(229, p, 3000)) << p;
    }
}

// The two primes above p are (p, b, c) and (p, -b, c); their classes are
// mutually inverse and share principality.
TEST(RealQuadratic, ConjugatePrimeIsInverseClass)
{
    for (std::int64_t p : {182857, 19249, 48121}) {
        std::int64_t b = sqrt_mod(401, p);
        if (b % 2 == 0) {
            b = p - b;
        }
        Integer c = (Integer(b) * b - 401) / (4 * Integer(p));
        FormClass beta = FormClass::of({Integer(p), Integer(b), c});
        FormClass other = FormClass::of({Integer(p), Integer(-b), c});
        EXPECT_TRUE(beta == split_prime_class(401, p) || other == split_prime_class(401, p));
        EXPECT_EQ(other, conjugate_class(beta));
        EXPECT_TRUE(is_principal(compose(beta, other)));
        EXPECT_EQ(is_principal(other), is_principal(beta));
    }
}

TEST(RealQuadratic, TSums)
{
    EXPECT_EQ(t_sum(5, 1), -1);
    EXPECT_EQ(t_sum(5, 2), -3);
    EXPECT_EQ(t_sum(13, 1), -5);
    EXPECT_EQ(t_sum(13, 2), -39);
    EXPECT_EQ(t_sum(401, 1), -774);
    EXPECT_EQ(t_sum(401, 2), -103458);
    EXPECT_EQ(t_sum(401, 0), 0);
    EXPECT_EQ(mod(t_sum(401, 1), Integer(5)), 1);
    EXPECT_EQ(mod(t_sum(401, 2), Integer(5)), 2);
    EXPECT_EQ(mod(t_sum(401, 2) - 401 * t_sum(401, 1), Integer(5)), 1);
}

TEST(RealQuadratic, NormExponent)
{
    for (std::int64_t l : {5, 13, 17, 29, 37, 401}) {
        for (unsigned i : {0u, 1u, 2u, 3u}) {
            ASSERT_EQ(norm_exponent(s_sum(l, i)), t_sum(l, i)) << l << " " << i;
        }
        EXPECT_EQ(norm_exponent(s_sum(l, 0)), 0);
        EXPECT_EQ(norm_exponent(stickelberger_integral(l)), 0);
    }
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        GaloisRingElement x(13), y(13);
        for (std::int64_t u = 1; u < 13; ++u) {
            x.add_term(u, Rational(std::int64_t(rng() % 11) - 5));
            y.add_term(u, Rational(std::int64_t(rng() % 11) - 5));
        }
        ASSERT_EQ(norm_exponent(x + y), norm_exponent(x) + norm_exponent(y));
    }
    EXPECT_THROW(norm_exponent(stickelberger(13)), DataConsistencyError);
    EXPECT_THROW(norm_exponent(s_sum(7, 1)), InvalidInput);
}
