#ifndef EQCHAR_ARITH_HPP
#define EQCHAR_ARITH_HPP

// Exact integer and rational arithmetic used throughout the library,
// plus the handful of elementary number-theoretic routines the other
// modules need (primality, modular inverses, Legendre symbols, square
// roots modulo a prime).

#include <cstdint>
#include <limits>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "eqchar/error.hpp"

namespace eqchar {

// Expression templates off: values are always materialised, which keeps
// auto, ?: and brace-init well behaved.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

/// Floor division for d != 0 (C++ division truncates toward zero).
inline Integer floor_div(const Integer& n, const Integer& d)
{
    Integer q = n / d;
    Integer r = n % d;
    if (r != 0 && ((r < 0) != (d < 0))) {
        --q;
    }
    return q;
}

/// Least non-negative residue of n modulo |m|.
inline Integer mod(const Integer& n, const Integer& m)
{
    Integer r = n % m;
    if (r < 0) {
        r += abs(m);
    }
    return r;
}

inline std::int64_t mod(std::int64_t n, std::int64_t m)
{
    std::int64_t r = n % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

inline Integer floor(const Rational& q) { return floor_div(numerator_of(q), denominator_of(q)); }

/// {x} = x - floor(x), always in [0, 1); {-1/5} = 4/5.
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

/// Converts an exact integral rational to Integer; throws otherwise.
inline Integer to_integer(const Rational& q, const std::string& what)
{
    if (!is_integral(q)) {
        throw DataConsistencyError(what + " is not an integer: " + numerator_of(q).str() + "/"
                                   + denominator_of(q).str());
    }
    return numerator_of(q);
}

inline std::int64_t to_int64(const Integer& n)
{
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
        throw InvalidInput("integer out of 64-bit range: " + n.str());
    }
    return static_cast<std::int64_t>(n);
}

/// "num/den" with den > 0 and gcd(num, den) = 1, integers included ("3/1").
inline std::string to_string(const Rational& q)
{
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    Integer num, den(1);
    try {
        num = Integer(s.substr(0, slash));
        if (slash != std::string::npos) {
            den = Integer(s.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw InvalidInput("malformed rational '" + s + "'");
    }
    if (den == 0) {
        throw InvalidInput("zero denominator in rational '" + s + "'");
    }
    // the rational backend insists on a positive denominator
    return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

/// Floor of the square root of n >= 0.
inline Integer isqrt(const Integer& n)
{
    if (n < 0) {
        throw InvalidInput("isqrt of a negative number");
    }
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Integer& n)
{
    if (n < 0) {
        return false;
    }
    Integer s = isqrt(n);
    return s * s == n;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer& a, const Integer& b)
{
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        return {-old_r, -old_s, -old_t};
    }
    return {old_r, old_s, old_t};
}

/// Inverse of a modulo m (m >= 2); throws when gcd(a, m) != 1.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
    auto [g, x, y] = xgcd(Integer(mod(a, m)), Integer(m));
    (void)y;
    if (g != 1) {
        throw InvalidInput(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    }
    return static_cast<std::int64_t>(mod(x, Integer(m)));
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

inline std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t m)
{
    std::int64_t result = 1 % m;
    base = mod(base, m);
    while (exp != 0) {
        if (exp & 1U) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit n.
inline bool is_prime(std::int64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) {
            return n == q;
        }
    }
    std::int64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = pow_mod(a, static_cast<std::uint64_t>(d), n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
inline int legendre(std::int64_t a, std::int64_t p)
{
    std::int64_t r = pow_mod(a, static_cast<std::uint64_t>((p - 1) / 2), p);
    if (r == 0) {
        return 0;
    }
    return r == 1 ? 1 : -1;
}

/// A square root of a modulo the odd prime p (Tonelli-Shanks); a must be a
/// non-zero quadratic residue.
inline std::int64_t sqrt_mod(std::int64_t a, std::int64_t p)
{
    a = mod(a, p);
    if (legendre(a, p) != 1) {
        throw InvalidInput(std::to_string(a) + " is not a non-zero square modulo " + std::to_string(p));
    }
    std::int64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::int64_t z = 2;
    while (legendre(z, p) != -1) {
        ++z;
    }
    std::int64_t m = s;
    std::int64_t c = pow_mod(z, static_cast<std::uint64_t>(q), p);
    std::int64_t t = pow_mod(a, static_cast<std::uint64_t>(q), p);
    std::int64_t r = pow_mod(a, static_cast<std::uint64_t>((q + 1) / 2), p);
    while (t != 1) {
        std::int64_t i = 0;
        std::int64_t t2 = t;
        while (t2 != 1) {
            t2 = mul_mod(t2, t2, p);
            ++i;
        }
        std::int64_t b = c;
        for (std::int64_t j = 0; j < m - i - 1; ++j) {
            b = mul_mod(b, b, p);
        }
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

inline std::int64_t ipow(std::int64_t base, unsigned exp)
{
    std::int64_t r = 1;
    while (exp-- > 0) {
        r *= base;
    }
    return r;
}

} // namespace eqchar

#endif // EQCHAR_ARITH_HPP
