#ifndef EQCHAR_INTERSECTION_HPP
#define EQCHAR_INTERSECTION_HPP

// Quadratic and linear intersection forms evaluated on resolvent divisors,
// the Euler-characteristic differences they produce, and the per-character
// exponent vectors of the residue prime.

#include <cstdint>
#include <map>
#include <string>

#include "eqchar/arith.hpp"
#include "eqchar/cover_model.hpp"
#include "eqchar/error.hpp"
#include "eqchar/galois_ring.hpp"
#include "eqchar/resolvent.hpp"

namespace eqchar {

/// sum_{y,z} r1[y] r2[z] (y.z).
inline Rational pair(const CoverDatum& c, const ResolventDivisor& r1, const ResolventDivisor& r2)
{
    Rational total = 0;
    for (const auto& [y, v] : r1.coeffs()) {
        for (const auto& [z, w] : r2.coeffs()) {
            total += v * w * Rational(c.intersection(y, z));
        }
    }
    return total;
}

/// c_1(omega) . r = sum_y r[y] (c_1(omega) . y).
inline Rational canonical_pair(const CoverDatum& c, const ResolventDivisor& r)
{
    Rational total = 0;
    for (const auto& [y, v] : r.coeffs()) {
        total += v * Rational(canonical_degree(c, y));
    }
    return total;
}

struct TInvariant
{
    Rational quadratic_part; // r^2
    Rational linear_part;    // c_1(omega) . r
    Rational value;          // r^2 + c_1(omega) . r

    friend bool operator==(const TInvariant&, const TInvariant&) = default;
};

inline TInvariant t_invariant(const CoverDatum& c, const SheafSpec& s, const CharacterSpec& phi)
{
    ResolventDivisor r = resolvent_divisor(c, s, phi);
    TInvariant t;
    t.quadratic_part = pair(c, r, r);
    t.linear_part = canonical_pair(c, r);
    t.value = t.quadratic_part + t.linear_part;
    return t;
}

namespace detail {

inline void require_canonical_family(const SheafSpec& s, const char* op)
{
    if (s.kind != SheafKind::canonical && s.kind != SheafKind::canonical_half) {
        throw InvalidInput(std::string(op) + " is defined for the canonical and half-canonical sheaves only");
    }
}

} // namespace detail

/// T(F, phi) - T(O_X, phi) = 2 chi(T_phi(O_X, F)); must be an integer.
inline Integer euler_delta(const CoverDatum& c, const SheafSpec& s, const CharacterSpec& phi)
{
    detail::require_canonical_family(s, "euler_delta");
    Rational d = t_invariant(c, s, phi).value - t_invariant(c, SheafSpec{SheafKind::structure}, phi).value;
    return to_integer(d, "Euler-characteristic difference T(F,phi) - T(O_X,phi)");
}

/// r(F, phi)^2 - r(O_X, phi)^2, the twisted difference; must be an integer.
inline Integer twisted_delta(const CoverDatum& c, const SheafSpec& s, const CharacterSpec& phi)
{
    detail::require_canonical_family(s, "twisted_delta");
    ResolventDivisor rs = resolvent_divisor(c, s, phi);
    ResolventDivisor ro = resolvent_divisor(c, SheafSpec{SheafKind::structure}, phi);
    return to_integer(pair(c, rs, rs) - pair(c, ro, ro), "twisted difference r(F,phi)^2 - r(O_X,phi)^2");
}

/// a(phi) = f(phi)^2 + sum_{y in S(phi)} (y^2 + 2 chi(y, O_y)).
inline Integer a_invariant(const CoverDatum& c, const CharacterSpec& phi)
{
    ResolventDivisor f = support_divisor(c, phi, false);
    Rational total = pair(c, f, f);
    for (const auto& [y, v] : f.coeffs()) {
        (void)v;
        const FiberComponent& comp = c.component(y);
        total += Rational(comp.self_intersection + 2 * comp.chi_struct);
    }
    return numerator_of(total);
}

/// Family {T(O_X, chi^a) - T(F, chi^a)}_{1 <= a < n}: the exponent of the
/// residue-prime class on sigma_a^{-1}.
struct ExponentVector
{
    std::int64_t group_order = 1;
    std::int64_t residue_prime = 2;
    SheafKind sheaf = SheafKind::structure;
    std::map<std::int64_t, Integer> coeffs;

    static constexpr const char* base = "[P]^(sigma_a^-1), coefficient T(O_X,chi^a) - T(F,chi^a)";

    Integer operator[](std::int64_t a) const
    {
        auto it = coeffs.find(a);
        return it == coeffs.end() ? Integer(0) : it->second;
    }

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

inline ExponentVector exponent_vector(const CoverDatum& c, const SheafSpec& s)
{
    ExponentVector ev;
    ev.group_order = c.group_order;
    ev.residue_prime = c.residue_prime;
    ev.sheaf = s.kind;
    const SheafSpec structure{SheafKind::structure};
    for (std::int64_t a = 1; a < c.group_order; ++a) {
        auto phi = CharacterSpec::exponent(a);
        Rational d = t_invariant(c, structure, phi).value - t_invariant(c, s, phi).value;
        ev.coeffs[a] = to_integer(d, "exponent T(O_X,chi^" + std::to_string(a) + ") - T(F,chi^"
                                         + std::to_string(a) + ")");
    }
    return ev;
}

/// The exponent vector as the group-ring element sum_a coeff(a) sigma_a^{-1}.
/// Indices must be units modulo the group order.
inline GaloisRingElement to_group_ring(const ExponentVector& ev)
{
    GaloisRingElement x(ev.group_order);
    for (const auto& [a, v] : ev.coeffs) {
        if (v == 0) {
            continue;
        }
        x.add_term(inverse_mod(a, ev.group_order), Rational(v));
    }
    return x;
}

} // namespace eqchar

#endif // EQCHAR_INTERSECTION_HPP
