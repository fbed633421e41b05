#ifndef EQCHAR_REAL_QUADRATIC_HPP
#define EQCHAR_REAL_QUADRATIC_HPP

// Class groups of real quadratic fields Q(sqrt(l)), l prime = 1 (mod 4),
// through indefinite binary quadratic forms a x^2 + b xy + c y^2 of
// discriminant l: cycles of reduced forms, Gauss composition, the
// wide/narrow distinction, and the quadratic-character sums t_i.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "eqchar/arith.hpp"
#include "eqchar/error.hpp"
#include "eqchar/galois_ring.hpp"

namespace eqchar {

struct QuadForm
{
    Integer a, b, c;

    Integer discriminant() const { return b * b - 4 * a * c; }

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend bool operator<(const QuadForm& x, const QuadForm& y)
    {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    }
};

inline std::string to_string(const QuadForm& f)
{
    return "(" + f.a.str() + ", " + f.b.str() + ", " + f.c.str() + ")";
}

namespace forms {

inline void require_indefinite_discriminant(const Integer& D)
{
    if (D <= 0 || is_square(D) || mod(D, Integer(4)) != 1) {
        throw InvalidInput("discriminant " + D.str() + " must be a positive non-square = 1 (mod 4)");
    }
}

/// |sqrt(D) - 2|a|| < b < sqrt(D), evaluated exactly with s = isqrt(D)
/// (sqrt(D) is irrational, so b < sqrt(D) iff b <= s).
inline bool is_reduced(const QuadForm& f, const Integer& s)
{
    Integer twice_a = 2 * abs(f.a);
    return f.b > 0 && f.b <= s && twice_a >= s - f.b + 1 && twice_a <= s + f.b;
}

/// One reduction step (a, b, c) -> (c, b', (b'^2 - D)/(4c)) with
/// b' = -b (mod 2|c|) normalised into (sqrt(D) - 2|c|, sqrt(D)) when
/// |c| < sqrt(D), and into (-|c|, |c|] otherwise.
inline QuadForm rho(const QuadForm& f, const Integer& D, const Integer& s)
{
    Integer two_c = 2 * abs(f.c);
    Integer lo = abs(f.c) <= s ? s - two_c + 1 : -abs(f.c) + 1;
    Integer bp = mod(-f.b - lo, two_c) + lo;
    return {f.c, bp, (bp * bp - D) / (4 * f.c)};
}

inline QuadForm reduce(QuadForm f)
{
    Integer D = f.discriminant();
    Integer s = isqrt(D);
    while (!is_reduced(f, s)) {
        f = rho(f, D, s);
    }
    return f;
}

/// The rho-cycle of a reduced form, sorted.
inline std::vector<QuadForm> cycle(const QuadForm& reduced)
{
    Integer D = reduced.discriminant();
    Integer s = isqrt(D);
    std::vector<QuadForm> out{reduced};
    for (QuadForm g = rho(reduced, D, s); g != reduced; g = rho(g, D, s)) {
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Gauss composition of primitive forms of equal discriminant (united
/// forms): with e = gcd(a1, a2, (b1+b2)/2) = u a1 + v a2 + w (b1+b2)/2,
/// a3 = a1 a2 / e^2 and b3 = (u a1 b2 + v a2 b1 + w (b1 b2 + D)/2) / e.
inline QuadForm compose(const QuadForm& f, const QuadForm& g)
{
    Integer D = f.discriminant();
    if (g.discriminant() != D) {
        throw InvalidInput("cannot compose forms of different discriminants");
    }
    Integer beta = (f.b + g.b) / 2;
    auto [g1, x1, y1] = xgcd(f.a, g.a);
    auto [e, x2, w] = xgcd(g1, beta);
    Integer u = x2 * x1;
    Integer v = x2 * y1;
    Integer a3 = f.a * g.a / (e * e);
    Integer b3 = (u * f.a * g.b + v * g.a * f.b + w * ((f.b * g.b + D) / 2)) / e;
    b3 = mod(b3, 2 * abs(a3));
    Integer num = b3 * b3 - D;
    if (num % (4 * a3) != 0) {
        throw Error("composition failed for " + to_string(f) + " * " + to_string(g));
    }
    return {a3, b3, num / (4 * a3)};
}

inline QuadForm principal_form(const Integer& D) { return {1, 1, (1 - D) / 4}; }
inline QuadForm negative_principal_form(const Integer& D) { return {-1, 1, (D - 1) / 4}; }

/// All reduced primitive forms of discriminant D.
inline std::vector<QuadForm> reduced_forms(const Integer& D)
{
    require_indefinite_discriminant(D);
    Integer s = isqrt(D);
    std::vector<QuadForm> out;
    for (Integer b = 1; b <= s; b += 2) {
        Integer n = (D - b * b) / 4; // = -a c > 0
        // 2|a| in [sqrt(D) - b, sqrt(D) + b]
        for (Integer a = (s - b + 2) / 2; 2 * a <= s + b; ++a) {
            if (a < 1 || n % a != 0) {
                continue;
            }
            for (const Integer& sa : {a, Integer(-a)}) {
                QuadForm f{sa, b, -n / sa};
                if (gcd(gcd(f.a, f.b), f.c) == 1) {
                    out.push_back(f);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Norm of the fundamental unit from the period parity of the continued
/// fraction of (1 + sqrt(D))/2: -1 for odd period, +1 for even.
inline int fundamental_unit_norm(const Integer& D)
{
    require_indefinite_discriminant(D);
    Integer s = isqrt(D);
    Integer P = 1, Q = 2;
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    for (std::size_t i = 0;; ++i) {
        auto [it, inserted] = seen.emplace(std::make_pair(P, Q), i);
        if (!inserted) {
            std::size_t period = i - it->second;
            return period % 2 == 1 ? -1 : 1;
        }
        Integer a = floor_div(P + s, Q);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

} // namespace forms

/// A narrow (proper-equivalence) form class, identified by its full cycle of
/// reduced forms.
struct FormClass
{
    Integer discriminant;
    QuadForm form;               // least reduced form of the cycle
    std::vector<QuadForm> cycle; // sorted

    static FormClass of(const QuadForm& f)
    {
        FormClass fc;
        fc.discriminant = f.discriminant();
        forms::require_indefinite_discriminant(fc.discriminant);
        fc.cycle = forms::cycle(forms::reduce(f));
        fc.form = fc.cycle.front();
        return fc;
    }

    bool contains(const QuadForm& f) const { return std::binary_search(cycle.begin(), cycle.end(), forms::reduce(f)); }

    friend bool operator==(const FormClass& x, const FormClass& y)
    {
        return x.discriminant == y.discriminant && x.form == y.form;
    }
};

inline FormClass compose(const FormClass& x, const FormClass& y)
{
    return FormClass::of(forms::compose(x.form, y.form));
}

inline FormClass conjugate_class(const FormClass& x) { return FormClass::of({x.form.a, -x.form.b, x.form.c}); }

struct ClassGroupSummary
{
    Integer discriminant;
    std::int64_t narrow_class_number = 0;
    std::int64_t wide_class_number = 0;
    int fundamental_unit_norm = 0;
};

/// Class numbers of the real quadratic order of fundamental discriminant
/// D = 1 (mod 4) by enumerating reduced forms and splitting them into cycles.
inline ClassGroupSummary form_class_group(const Integer& D)
{
    std::vector<QuadForm> pending = forms::reduced_forms(D);
    std::set<QuadForm> left(pending.begin(), pending.end());
    ClassGroupSummary sum;
    sum.discriminant = D;
    while (!left.empty()) {
        for (const auto& f : forms::cycle(*left.begin())) {
            left.erase(f);
        }
        ++sum.narrow_class_number;
    }
    sum.fundamental_unit_norm = forms::fundamental_unit_norm(D);
    sum.wide_class_number = sum.fundamental_unit_norm == -1 ? sum.narrow_class_number : sum.narrow_class_number / 2;
    return sum;
}

namespace detail {

inline void require_prime_one_mod_four(std::int64_t l)
{
    if (!is_prime(l) || l % 4 != 1) {
        throw InvalidInput(std::to_string(l) + " must be a prime = 1 (mod 4)");
    }
}

} // namespace detail

inline ClassGroupSummary class_group(std::int64_t l)
{
    detail::require_prime_one_mod_four(l);
    return form_class_group(Integer(l));
}

/// Principal in the wide (ideal) class group: the class is the principal
/// cycle, or, when the fundamental unit has norm +1, the cycle of -x^2 + ...
inline bool is_principal(const FormClass& x)
{
    const Integer& D = x.discriminant;
    if (x.contains(forms::principal_form(D))) {
        return true;
    }
    return forms::fundamental_unit_norm(D) == 1 && x.contains(forms::negative_principal_form(D));
}

/// Order of the class in the wide class group.
inline std::int64_t class_order(const FormClass& x)
{
    FormClass power = x;
    std::int64_t k = 1;
    while (!is_principal(power)) {
        power = compose(power, x);
        ++k;
        if (k > 1000000) {
            throw Error("class order search did not terminate");
        }
    }
    return k;
}

/// The class of the degree-one prime above p in Q(sqrt(l)): the form
/// (p, b, (b^2 - l)/(4p)) with b odd, b^2 = l (mod 4p). The root b is the
/// odd lift of the least square root of l mod p; the other root gives the
/// conjugate prime, whose class is the inverse.
inline FormClass split_prime_class(std::int64_t l, std::int64_t p)
{
    detail::require_prime_one_mod_four(l);
    if (p == 2 || p == l || !is_prime(p)) {
        throw InvalidInput(std::to_string(p) + " must be an odd prime different from " + std::to_string(l));
    }
    if (legendre(l, p) != 1) {
        throw InvalidInput(std::to_string(p) + " does not split in Q(sqrt(" + std::to_string(l) + "))");
    }
    std::int64_t b = sqrt_mod(l, p);
    b = std::min(b, p - b);
    if (b % 2 == 0) {
        b = p - b;
    }
    Integer B(b);
    return FormClass::of({Integer(p), B, (B * B - l) / (4 * Integer(p))});
}

/// t_i = sum_{a < l/2, a square mod l} a^i - sum_{b < l/2, b non-square} b^i.
inline Integer t_sum(std::int64_t l, unsigned i)
{
    detail::require_prime_one_mod_four(l);
    Integer t = 0;
    for (std::int64_t a = 1; 2 * a < l; ++a) {
        Integer term = boost::multiprecision::pow(Integer(a), i);
        t += legendre(a, l) == 1 ? term : Integer(-term);
    }
    return t;
}

/// Exponent of [beta] in N([P]^x) for x in Z[Gal(Q(zeta_l)/Q)]: the norm to
/// Q(sqrt(l)) sends sigma_u P to beta when u is a square mod l and to the
/// conjugate prime (class [beta]^{-1}) otherwise.
inline Integer norm_exponent(const GaloisRingElement& x)
{
    detail::require_prime_one_mod_four(x.modulus());
    Integer total = 0;
    for (const auto& [u, c] : x.coeffs()) {
        Integer n = to_integer(c, "group ring coefficient");
        total += legendre(u, x.modulus()) == 1 ? n : Integer(-n);
    }
    return total;
}

} // namespace eqchar

#endif // EQCHAR_REAL_QUADRATIC_HPP
