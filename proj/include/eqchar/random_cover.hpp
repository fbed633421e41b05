#ifndef EQCHAR_RANDOM_COVER_HPP
#define EQCHAR_RANDOM_COVER_HPP

// Seeded generators of valid cover data and characters, shared by the
// property suites and the `verify` command.

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "eqchar/arith.hpp"
#include "eqchar/cover_model.hpp"

namespace eqchar {

struct RandomCoverOptions
{
    int max_components = 6;
    std::int64_t max_e = 81;       // odd ramification indices up to this bound
    bool divisible = false;        // every intersection number a multiple of the group order
};

class CoverGenerator
{
  public:
    explicit CoverGenerator(std::uint64_t seed, RandomCoverOptions opts = {}) : rng_(seed), opts_(opts) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    CoverDatum cover()
    {
        CoverDatum c;
        int k = static_cast<int>(uniform(1, opts_.max_components));
        std::int64_t n = 1;
        for (int i = 0; i < k; ++i) {
            FiberComponent y;
            y.id = "y" + std::to_string(i);
            y.e = 2 * uniform(0, (opts_.max_e - 1) / 2) + 1;
            if (y.e > 1) {
                do {
                    y.m = uniform(1, y.e - 1);
                } while (gcd(y.m, y.e) != 1);
            }
            y.chi_struct = uniform(-2, 2);
            y.d_custom = Integer(uniform(-2 * y.e, 2 * y.e));
            n = std::lcm(n, y.e);
            c.components.push_back(std::move(y));
        }
        c.group_order = n;
        do {
            c.residue_prime = uniform(opts_.max_e + 2, 2000);
        } while (!is_prime(c.residue_prime));

        const std::int64_t scale = opts_.divisible ? n : 1;
        for (auto& y : c.components) {
            y.self_intersection = Integer(-uniform(0, 40)) * scale;
        }
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (uniform(0, 2) != 0) {
                    c.intersections.set(c.components[i].id, c.components[j].id, Integer(uniform(0, 20)) * scale);
                }
            }
        }
        return validate_cover(std::move(c));
    }

    CharacterSpec character(const CoverDatum& c)
    {
        if (uniform(0, 1) == 0) {
            return CharacterSpec::exponent(uniform(0, c.group_order - 1));
        }
        std::map<ComponentId, std::int64_t> raw;
        for (const auto& y : c.components) {
            raw[y.id] = uniform(0, y.e - 1);
        }
        return CharacterSpec::raw(std::move(raw));
    }

  private:
    std::mt19937_64 rng_;
    RandomCoverOptions opts_;
};

/// Random valid modular parameters: p = 1 (mod 24) prime below p_limit and
/// l > 3 a prime divisor of p - 1, optionally restricted to l = 1 (mod 4).
inline std::pair<std::int64_t, std::int64_t> random_modular_pair(std::mt19937_64& rng, std::int64_t p_limit,
                                                                 bool l_one_mod_four = false)
{
    std::uniform_int_distribution<std::int64_t> dist(1, (p_limit - 1) / 24);
    for (;;) {
        std::int64_t p = 24 * dist(rng) + 1;
        if (!is_prime(p)) {
            continue;
        }
        std::vector<std::int64_t> ls;
        std::int64_t m = p - 1;
        for (std::int64_t q = 2; q * q <= m; ++q) {
            if (m % q == 0) {
                if (q > 3 && (!l_one_mod_four || q % 4 == 1)) {
                    ls.push_back(q);
                }
                while (m % q == 0) {
                    m /= q;
                }
            }
        }
        if (m > 3 && (!l_one_mod_four || m % 4 == 1)) {
            ls.push_back(m);
        }
        if (ls.empty()) {
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
        return {p, ls[pick(rng)]};
    }
}

} // namespace eqchar

#endif // EQCHAR_RANDOM_COVER_HPP
