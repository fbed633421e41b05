#ifndef EQCHAR_MODULAR_HPP
#define EQCHAR_MODULAR_HPP

// The cyclic cover X_1(p)/H -> X_1(p)/Gamma of order l: its fiber data at
// p, the closed form of T_p(O_X, psi_0^a), the three class exponents in
// Z[Gal(Q(zeta_l)/Q)], their norms to Q(sqrt(l)), and the search for
// primes p giving non-trivial norm images.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqchar/arith.hpp"
#include "eqchar/cover_model.hpp"
#include "eqchar/error.hpp"
#include "eqchar/galois_ring.hpp"
#include "eqchar/intersection.hpp"
#include "eqchar/real_quadratic.hpp"
#include "eqchar/resolvent.hpp"

namespace eqchar {

inline const ComponentId modular_ramified_component = "y0";
inline const ComponentId modular_unramified_component = "yinf";

struct ModularParams
{
    std::int64_t p = 0;
    std::int64_t l = 0;
};

inline void validate_modular_params(const ModularParams& mp)
{
    if (!is_prime(mp.p)) {
        throw InvalidInput("p = " + std::to_string(mp.p) + " is not prime");
    }
    if (mp.p % 24 != 1) {
        throw InvalidInput("p = " + std::to_string(mp.p) + " is not 1 (mod 24)");
    }
    if (mp.l <= 3 || !is_prime(mp.l)) {
        throw InvalidInput("l = " + std::to_string(mp.l) + " must be a prime > 3");
    }
    if ((mp.p - 1) % mp.l != 0) {
        throw InvalidInput("l = " + std::to_string(mp.l) + " does not divide p - 1 = " + std::to_string(mp.p - 1));
    }
}

/// Two P^1 components over p: y0 totally ramified (e = l), yinf unramified,
/// y0.yinf = (p-1)/12 and y0^2 = yinf^2 = (1-p)/12.
inline CoverDatum build_cover(const ModularParams& mp)
{
    validate_modular_params(mp);
    Integer self((1 - mp.p) / 12);
    CoverDatum c;
    c.group_order = mp.l;
    c.residue_prime = mp.p;
    c.components.push_back({modular_ramified_component, mp.l, 1, self, 1, std::nullopt});
    c.components.push_back({modular_unramified_component, 1, 0, self, 1, std::nullopt});
    c.intersections.set(modular_ramified_component, modular_unramified_component, Integer((mp.p - 1) / 12));
    return validate_cover(std::move(c));
}

/// T_p(O_X, psi_0^a) from -l T = (p-1)/(12 l) a^2 + (2 - (p-1)/12) a.
inline Rational t_closed_form(const ModularParams& mp, std::int64_t a)
{
    validate_modular_params(mp);
    if (a < 1 || a >= mp.l) {
        throw InvalidInput("character exponent a = " + std::to_string(a) + " out of range [1, l)");
    }
    Rational A(a);
    Rational minus_lt = Rational(mp.p - 1, 12 * mp.l) * A * A + (Rational(2) - Rational(mp.p - 1, 12)) * A;
    return -minus_lt / Rational(mp.l);
}

/// Ideal whose class is raised to a group-ring exponent.
enum class ExponentBase { P, P_bar, P_P_bar };

inline std::string to_string(ExponentBase b)
{
    switch (b) {
    case ExponentBase::P: return "[P]";
    case ExponentBase::P_bar: return "[Pbar]";
    case ExponentBase::P_P_bar: return "[P Pbar]";
    }
    return "?";
}

struct ClassRepresentation
{
    std::string name;
    ExponentBase base = ExponentBase::P;
    GaloisRingElement exponent{1};

    /// The same class written as [P]^x: Pbar = sigma_{-1} P.
    GaloisRingElement on_p() const
    {
        std::int64_t l = exponent.modulus();
        switch (base) {
        case ExponentBase::P: return exponent;
        case ExponentBase::P_bar: return apply_sigma(l - 1, exponent);
        case ExponentBase::P_P_bar: return exponent + apply_sigma(l - 1, exponent);
        }
        return exponent;
    }
};

/// The exponent data behind one class phi(...) in Cl(Z[zeta_l]).
struct ModularClass
{
    std::string name;
    std::vector<ClassRepresentation> representations;
};

struct ModularExponents
{
    ModularParams params;
    Integer twelfth; // (p-1)/(12 l)
    Integer sixth;   // (p-1)/(6 l)

    ModularClass v_class;       // 2 chi(omega^{1/2}) - 2 chi(O_X)
    ModularClass half_class;    // 2 l chi(omega^{1/2})
    ModularClass structure_class; // 2 l chi(O_X)

    /// Raw V vector equals sigma_{-1} ((p-1)/(6l) s_1 - 2 s_0) coefficientwise.
    bool raw_v_matches_simplified = false;
};

namespace detail {

inline Integer exact_quotient(std::int64_t num, std::int64_t den, const char* what)
{
    Rational q(num, den);
    return to_integer(q, what);
}

} // namespace detail

inline ModularExponents modular_exponents(const ModularParams& mp)
{
    CoverDatum cover = build_cover(mp);
    const std::int64_t l = mp.l;
    ModularExponents out;
    out.params = mp;
    out.twelfth = detail::exact_quotient(mp.p - 1, 12 * l, "(p-1)/(12 l)");
    out.sixth = detail::exact_quotient(mp.p - 1, 6 * l, "(p-1)/(6 l)");
    const Rational q12(out.twelfth);
    const Rational q6(out.sixth);

    const auto s0 = s_sum(l, 0);
    const auto s1 = s_sum(l, 1);
    const auto s2 = s_sum(l, 2);

    GaloisRingElement raw_v = to_group_ring(exponent_vector(cover, SheafSpec{SheafKind::canonical_half}));
    GaloisRingElement raw_o(l);
    GaloisRingElement raw_half(l);
    for (std::int64_t a = 1; a < l; ++a) {
        auto phi = CharacterSpec::exponent(a);
        std::int64_t idx = inverse_mod(a, l);
        raw_o.add_term(idx, Rational(to_integer(-Rational(l) * t_invariant(cover, SheafSpec{SheafKind::structure}, phi).value,
                                                "l T_p(O_X, psi^a)")));
        raw_half.add_term(idx, Rational(to_integer(
                                   -Rational(l) * t_invariant(cover, SheafSpec{SheafKind::canonical_half}, phi).value,
                                   "l T_p(omega^1/2, psi^a)")));
    }
    GaloisRingElement simplified_v = q6 * s1 - Rational(2) * s0;
    out.raw_v_matches_simplified = raw_v == apply_sigma(l - 1, simplified_v);

    out.v_class.name = "V = 2chi(omega^1/2) - 2chi(O_X)";
    out.v_class.representations = {
        {"stated", ExponentBase::P_P_bar, q12 * s1},
        {"resolvent", ExponentBase::P, raw_v},
        {"simplified", ExponentBase::P_bar, simplified_v},
    };
    out.half_class.name = "2l chi(omega^1/2)";
    out.half_class.representations = {
        {"stated", ExponentBase::P_P_bar, q12 * s2},
        {"resolvent", ExponentBase::P, raw_half},
    };
    out.structure_class.name = "2l chi(O_X)";
    GaloisRingElement pbar_factor = -Rational(mp.p - 1, 6) * s1;
    out.structure_class.representations = {
        {"stated", ExponentBase::P_P_bar, q12 * (s2 - Rational(l) * s1)},
        {"resolvent", ExponentBase::P, raw_o},
        // [P Pbar]^{(p-1)/(12l) s_2} [Pbar]^{-(p-1)/6 s_1}
        {"two-factor", ExponentBase::P, (ClassRepresentation{"", ExponentBase::P_P_bar, q12 * s2}).on_p()
                                           + apply_sigma(l - 1, pbar_factor)},
    };
    return out;
}

enum class NormVerdict { non_trivial, trivial_in_norm, inconclusive };

inline std::string to_string(NormVerdict v)
{
    switch (v) {
    case NormVerdict::non_trivial: return "non-trivial";
    case NormVerdict::trivial_in_norm: return "trivial-in-norm";
    case NormVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct NormImage
{
    std::string name;
    std::vector<std::pair<std::string, Integer>> exponents; // per representation
    bool consistent = false;
    Integer expected;           // (p-1)/(6l) t_1, (p-1)/(6l) t_2, (p-1)/(6l)(t_2 - l t_1)
    Integer residue;            // expected mod order of [beta]
    NormVerdict verdict = NormVerdict::inconclusive;
};

struct NormReport
{
    ModularParams params;
    bool conclusive = false; // false for l = 3 (mod 4): Q(sqrt(l)) is not the real subfield
    std::optional<ClassGroupSummary> field;
    Integer t1, t2;
    std::optional<FormClass> beta;
    bool beta_principal = false;
    std::int64_t beta_order = 0;
    std::vector<NormImage> images;

    bool all_consistent() const
    {
        for (const auto& im : images) {
            if (!im.consistent) {
                return false;
            }
        }
        return true;
    }
};

inline NormReport norm_report(const ModularParams& mp)
{
    validate_modular_params(mp);
    NormReport rep;
    rep.params = mp;
    ModularExponents ex = modular_exponents(mp);
    if (mp.l % 4 != 1) {
        rep.conclusive = false;
        for (const ModularClass* mc : {&ex.v_class, &ex.half_class, &ex.structure_class}) {
            NormImage im;
            im.name = mc->name;
            im.verdict = NormVerdict::inconclusive;
            rep.images.push_back(std::move(im));
        }
        return rep;
    }
    rep.conclusive = true;
    rep.field = class_group(mp.l);
    rep.t1 = t_sum(mp.l, 1);
    rep.t2 = t_sum(mp.l, 2);
    rep.beta = split_prime_class(mp.l, mp.p);
    rep.beta_principal = is_principal(*rep.beta);
    rep.beta_order = class_order(*rep.beta);

    const Integer expected[3] = {ex.sixth * rep.t1, ex.sixth * rep.t2, ex.sixth * (rep.t2 - mp.l * rep.t1)};
    const ModularClass* classes[3] = {&ex.v_class, &ex.half_class, &ex.structure_class};
    for (int k = 0; k < 3; ++k) {
        NormImage im;
        im.name = classes[k]->name;
        im.expected = expected[k];
        im.consistent = true;
        for (const auto& r : classes[k]->representations) {
            Integer e = norm_exponent(r.on_p());
            im.consistent = im.consistent && e == expected[k];
            im.exponents.emplace_back(r.name, e);
        }
        im.residue = mod(expected[k], Integer(rep.beta_order));
        im.verdict = im.residue != 0 ? NormVerdict::non_trivial : NormVerdict::trivial_in_norm;
        rep.images.push_back(std::move(im));
    }
    return rep;
}

struct PrimeSearchResult
{
    std::int64_t l = 0;
    std::int64_t limit = 0;
    bool strict = false;
    std::optional<std::int64_t> p;
    std::int64_t primes_tested = 0;
    std::int64_t wide_class_number = 0;
};

/// Smallest prime p = 1 (mod 24 l), p <= limit, whose split prime beta is
/// non-principal in Q(sqrt(l)) and for which the three norm exponents are
/// non-zero modulo the order of [beta]. In strict mode the exponent test is
/// replaced by p != 1 (mod h), h the class number of Q(sqrt(l)).
inline PrimeSearchResult search_prime(std::int64_t l, std::int64_t limit, bool strict)
{
    if (l <= 3 || !is_prime(l) || l % 4 != 1) {
        throw InvalidInput("prime search needs a prime l > 3 with l = 1 (mod 4)");
    }
    PrimeSearchResult res;
    res.l = l;
    res.limit = limit;
    res.strict = strict;
    ClassGroupSummary k = class_group(l);
    res.wide_class_number = k.wide_class_number;
    if (k.wide_class_number == 1) {
        return res;
    }
    const Integer t1 = t_sum(l, 1);
    const Integer t2 = t_sum(l, 2);
    const std::int64_t step = 24 * l;
    for (std::int64_t p = step + 1; p <= limit; p += step) {
        if (!is_prime(p)) {
            continue;
        }
        ++res.primes_tested;
        if (strict && p % k.wide_class_number == 1) {
            continue;
        }
        FormClass beta = split_prime_class(l, p);
        if (is_principal(beta)) {
            continue;
        }
        if (!strict) {
            const Integer order(class_order(beta));
            const Integer sixth((p - 1) / (6 * l));
            bool all_nonzero = true;
            for (const Integer& t : {t1, t2, Integer(t2 - l * t1)}) {
                all_nonzero = all_nonzero && mod(sixth * t, order) != 0;
            }
            if (!all_nonzero) {
                continue;
            }
        }
        res.p = p;
        return res;
    }
    return res;
}

} // namespace eqchar

#endif // EQCHAR_MODULAR_HPP
