#ifndef EQCHAR_RESOLVENT_HPP
#define EQCHAR_RESOLVENT_HPP

// Resolvent-divisor coefficients v_y(F_phi) of invariant subsheaves
// F = O_X(-D) of the function field, and the support divisors f(phi),
// f'(phi) in which the canonical and half-canonical resolvents differ from
// the structure-sheaf resolvent.

#include <cstdint>
#include <map>
#include <string>

#include "eqchar/arith.hpp"
#include "eqchar/cover_model.hpp"
#include "eqchar/error.hpp"

namespace eqchar {

enum class SheafKind { structure, canonical, canonical_half, custom };

inline std::string to_string(SheafKind k)
{
    switch (k) {
    case SheafKind::structure: return "structure";
    case SheafKind::canonical: return "canonical";
    case SheafKind::canonical_half: return "canonical-half";
    case SheafKind::custom: return "custom";
    }
    return "?";
}

inline SheafKind parse_sheaf_kind(const std::string& s)
{
    if (s == "structure") return SheafKind::structure;
    if (s == "canonical") return SheafKind::canonical;
    if (s == "canonical-half" || s == "canonical_half") return SheafKind::canonical_half;
    if (s == "custom") return SheafKind::custom;
    throw InvalidInput("unknown sheaf kind '" + s + "'");
}

struct SheafSpec
{
    SheafKind kind = SheafKind::structure;

    /// d_y for this sheaf at component y.
    Integer coefficient(const FiberComponent& y) const
    {
        switch (kind) {
        case SheafKind::structure: return 0;
        case SheafKind::canonical: return y.e - 1;
        case SheafKind::canonical_half:
            if (y.e % 2 == 0) {
                throw InvalidInput("component '" + y.id + "': half-canonical sheaf needs odd ramification");
            }
            return (y.e - 1) / 2;
        case SheafKind::custom:
            if (!y.ramified()) {
                return 0;
            }
            if (!y.d_custom) {
                throw InvalidInput("component '" + y.id + "': custom sheaf requires d_custom");
            }
            return *y.d_custom;
        }
        return 0;
    }
};

/// Rational coefficients of a divisor supported on fiber components.
/// Zero coefficients are not stored.
class ResolventDivisor
{
  public:
    ResolventDivisor() = default;

    void set(const ComponentId& y, const Rational& v)
    {
        if (v == 0) {
            coeffs_.erase(y);
        } else {
            coeffs_[y] = v;
        }
    }

    Rational operator[](const ComponentId& y) const
    {
        auto it = coeffs_.find(y);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    const std::map<ComponentId, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    friend ResolventDivisor operator+(const ResolventDivisor& x, const ResolventDivisor& y)
    {
        ResolventDivisor r = x;
        for (const auto& [id, v] : y.coeffs_) {
            r.set(id, r[id] + v);
        }
        return r;
    }

    friend ResolventDivisor operator-(const ResolventDivisor& x, const ResolventDivisor& y)
    {
        ResolventDivisor r = x;
        for (const auto& [id, v] : y.coeffs_) {
            r.set(id, r[id] - v);
        }
        return r;
    }

    friend ResolventDivisor operator*(const Rational& s, const ResolventDivisor& x)
    {
        ResolventDivisor r;
        for (const auto& [id, v] : x.coeffs_) {
            r.set(id, s * v);
        }
        return r;
    }

    friend bool operator==(const ResolventDivisor&, const ResolventDivisor&) = default;

  private:
    std::map<ComponentId, Rational> coeffs_;
};

namespace detail {

inline void check_local_args(std::int64_t e, std::int64_t nphi)
{
    if (e < 1) {
        throw InvalidInput("ramification index must be positive");
    }
    if (nphi < 0 || nphi >= e) {
        throw InvalidInput("local exponent " + std::to_string(nphi) + " out of range [0, " + std::to_string(e)
                           + ")");
    }
}

} // namespace detail

/// v_y(F_phi) = {(n + d)/e} - d/e.
inline Rational resolvent_coefficient(std::int64_t e, const Integer& d, std::int64_t nphi)
{
    detail::check_local_args(e, nphi);
    Rational de(d, e);
    return frac(Rational(nphi + d, e)) - de;
}

/// Independent evaluation of v_y(F_phi) through the Lagrange-resolvent
/// computation: with -d = q e + r, 0 <= r < e, the basis element
/// w_y^q w_x^r alpha has phi-component of valuation (n + e q)/e when
/// r <= n and (n + e (q + 1))/e otherwise.
inline Rational lagrange_valuation_oracle(std::int64_t e, const Integer& d, std::int64_t nphi)
{
    detail::check_local_args(e, nphi);
    Integer q = floor_div(-d, Integer(e));
    Integer r = -d - q * e;
    if (r <= nphi) {
        return Rational(nphi + e * q, e);
    }
    return Rational(nphi + e * (q + 1), e);
}

/// r(F, phi) = sum_y v_y(F_phi) y over the listed fiber components.
inline ResolventDivisor resolvent_divisor(const CoverDatum& c, const SheafSpec& s, const CharacterSpec& phi)
{
    validate_character(c, phi);
    ResolventDivisor r;
    for (const auto& y : c.components) {
        if (!y.ramified()) {
            continue;
        }
        r.set(y.id, resolvent_coefficient(y.e, s.coefficient(y), local_exponent(c, phi, y.id)));
    }
    return r;
}

/// Indicator divisor of S(phi) = {y : n(phi,y) > 0}, or of
/// S'(phi) = {y : n(phi,y) > e_y/2} when strict_half is set.
inline ResolventDivisor support_divisor(const CoverDatum& c, const CharacterSpec& phi, bool strict_half)
{
    validate_character(c, phi);
    ResolventDivisor f;
    for (const auto& y : c.components) {
        std::int64_t n = local_exponent(c, phi, y.id);
        bool in = strict_half ? 2 * n > y.e : n > 0;
        if (in) {
            f.set(y.id, 1);
        }
    }
    return f;
}

/// Divisor-level identities between a character, its conjugate and its
/// square, plus the canonical and half-canonical decompositions.
struct ConjugationIdentityReport
{
    bool structure_pair = false;     // r(O, phi) + r(O, phibar) = f(phi)
    bool half_antisymmetric = false; // r(w^1/2, phi) + r(w^1/2, phibar) = 0
    bool half_square = false;        // r(w^1/2, phi) = r(O, phi^2) - r(O, phi)
    bool canonical_split = false;    // r(w, phi) = r(O, phi) - f(phi)
    bool half_split = false;         // r(w^1/2, phi) = r(O, phi) - f'(phi)

    bool all_pass() const { return structure_pair && half_antisymmetric && half_square && canonical_split && half_split; }
};

inline ConjugationIdentityReport check_conjugation_identities(const CoverDatum& c, const CharacterSpec& phi)
{
    const SheafSpec structure{SheafKind::structure};
    const SheafSpec canonical{SheafKind::canonical};
    const SheafSpec half{SheafKind::canonical_half};
    const CharacterSpec bar = conjugate(c, phi);
    const CharacterSpec sq = power(c, phi, 2);
    const ResolventDivisor f = support_divisor(c, phi, false);
    const ResolventDivisor f_half = support_divisor(c, phi, true);
    const ResolventDivisor r_o = resolvent_divisor(c, structure, phi);
    const ResolventDivisor r_h = resolvent_divisor(c, half, phi);

    ConjugationIdentityReport rep;
    rep.structure_pair = r_o + resolvent_divisor(c, structure, bar) == f;
    rep.half_antisymmetric = (r_h + resolvent_divisor(c, half, bar)).is_zero();
    rep.half_square = r_h == resolvent_divisor(c, structure, sq) - r_o;
    rep.canonical_split = resolvent_divisor(c, canonical, phi) == r_o - f;
    rep.half_split = r_h == r_o - f_half;
    return rep;
}

} // namespace eqchar

#endif // EQCHAR_RESOLVENT_HPP
