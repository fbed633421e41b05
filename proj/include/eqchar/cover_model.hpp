#ifndef EQCHAR_COVER_MODEL_HPP
#define EQCHAR_COVER_MODEL_HPP

// Ramification and intersection data of one special fiber of a tame cyclic
// cover X -> Y of arithmetic surfaces: exactly the data that the resolvent
// and intersection-form computations consume.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eqchar/arith.hpp"
#include "eqchar/error.hpp"

namespace eqchar {

using ComponentId = std::string;

struct FiberComponent
{
    ComponentId id;
    std::int64_t e = 1;           // ramification index e_y
    std::int64_t m = 0;           // inertia exponent: generator restricts to psi_y^m
    Integer self_intersection;    // y^2
    Integer chi_struct;           // chi(y, O_y)
    std::optional<Integer> d_custom;

    bool ramified() const { return e > 1; }

    friend bool operator==(const FiberComponent&, const FiberComponent&) = default;
};

/// Symmetric intersection pairing on fiber components. Only off-diagonal
/// entries are stored; the diagonal is the component's self-intersection.
class IntersectionMatrix
{
  public:
    /// Records y.z = value (and z.y); y == z entries are checked against the
    /// self-intersections during validation.
    void set(const ComponentId& y, const ComponentId& z, Integer value)
    {
        entries_[{y, z}] = value;
        entries_[{z, y}] = std::move(value);
    }

    /// Raw access used by validation: entries exactly as supplied.
    void set_raw(const ComponentId& y, const ComponentId& z, Integer value) { entries_[{y, z}] = std::move(value); }

    std::optional<Integer> find(const ComponentId& y, const ComponentId& z) const
    {
        auto it = entries_.find({y, z});
        if (it == entries_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    const std::map<std::pair<ComponentId, ComponentId>, Integer>& entries() const { return entries_; }

    friend bool operator==(const IntersectionMatrix&, const IntersectionMatrix&) = default;

  private:
    std::map<std::pair<ComponentId, ComponentId>, Integer> entries_;
};

struct CoverDatum
{
    std::int64_t group_order = 1;
    std::int64_t residue_prime = 2;
    std::vector<FiberComponent> components;
    IntersectionMatrix intersections;

    const FiberComponent& component(const ComponentId& id) const
    {
        auto it = std::find_if(components.begin(), components.end(),
                               [&](const FiberComponent& c) { return c.id == id; });
        if (it == components.end()) {
            throw InvalidInput("unknown component id '" + id + "'");
        }
        return *it;
    }

    bool has_component(const ComponentId& id) const
    {
        return std::any_of(components.begin(), components.end(),
                           [&](const FiberComponent& c) { return c.id == id; });
    }

    /// y.z, with y.y the self-intersection and unlisted pairs meeting in 0.
    Integer intersection(const ComponentId& y, const ComponentId& z) const
    {
        if (y == z) {
            return component(y).self_intersection;
        }
        component(y);
        component(z);
        return intersections.find(y, z).value_or(Integer(0));
    }

    friend bool operator==(const CoverDatum&, const CoverDatum&) = default;
};

/// A character of G, given either as a power chi^a of a fixed generator chi
/// (cyclic G) or directly by its local inertia exponents n(phi, y).
struct CharacterSpec
{
    struct Exponent
    {
        std::int64_t a = 0;
        friend bool operator==(const Exponent&, const Exponent&) = default;
    };
    struct Raw
    {
        std::map<ComponentId, std::int64_t> exponents;
        friend bool operator==(const Raw&, const Raw&) = default;
    };

    std::variant<Exponent, Raw> value;

    static CharacterSpec exponent(std::int64_t a) { return {Exponent{a}}; }
    static CharacterSpec raw(std::map<ComponentId, std::int64_t> exps) { return {Raw{std::move(exps)}}; }

    bool is_exponent() const { return std::holds_alternative<Exponent>(value); }

    friend bool operator==(const CharacterSpec&, const CharacterSpec&) = default;
};

namespace detail {

[[noreturn]] inline void invalid_component(const FiberComponent& c, const std::string& what)
{
    throw InvalidInput("component '" + c.id + "': " + what);
}

} // namespace detail

/// Checks every structural invariant of a cover datum and returns it with
/// components sorted by id. Throws InvalidInput naming the first violated
/// invariant and the offending component.
inline CoverDatum validate_cover(CoverDatum c)
{
    if (c.group_order < 1) {
        throw InvalidInput("group order must be positive");
    }
    if (c.group_order % 2 == 0) {
        throw InvalidInput("even group order");
    }
    if (!is_prime(c.residue_prime)) {
        throw InvalidInput("residue prime " + std::to_string(c.residue_prime) + " is not prime");
    }
    if (gcd(c.group_order, c.residue_prime) != 1) {
        throw InvalidInput("group order not coprime to residue prime (cover is not tame)");
    }

    std::sort(c.components.begin(), c.components.end(),
              [](const FiberComponent& x, const FiberComponent& y) { return x.id < y.id; });
    std::set<ComponentId> ids;
    for (const auto& y : c.components) {
        if (y.id.empty()) {
            throw InvalidInput("component with empty id");
        }
        if (!ids.insert(y.id).second) {
            detail::invalid_component(y, "duplicate component id");
        }
        if (y.e < 1) {
            detail::invalid_component(y, "ramification index must be positive");
        }
        if (c.group_order % y.e != 0) {
            detail::invalid_component(y, "ramification index does not divide group order");
        }
        if (y.e == 1) {
            if (y.m != 0) {
                detail::invalid_component(y, "unramified component must have inertia exponent 0");
            }
        } else {
            if (y.m < 0 || y.m >= y.e) {
                detail::invalid_component(y, "inertia exponent out of range [0, e)");
            }
            if (gcd(y.m, y.e) != 1) {
                detail::invalid_component(y, "inertia exponent not a unit");
            }
        }
    }

    for (const auto& [key, value] : c.intersections.entries()) {
        const auto& [y, z] = key;
        if (!ids.count(y) || !ids.count(z)) {
            throw InvalidInput("intersection references unknown component id '" + (ids.count(y) ? z : y) + "'");
        }
        if (y == z) {
            if (value != c.component(y).self_intersection) {
                detail::invalid_component(c.component(y), "diagonal intersection differs from self_intersection");
            }
            continue;
        }
        auto mirror = c.intersections.find(z, y);
        if (!mirror || *mirror != value) {
            throw InvalidInput("asymmetric intersection matrix at ('" + y + "', '" + z + "')");
        }
        if (value < 0) {
            throw InvalidInput("negative intersection number between distinct components ('" + y + "', '" + z
                               + "')");
        }
    }
    return c;
}

/// n(phi, y) in [0, e_y).
inline std::int64_t local_exponent(const CoverDatum& c, const CharacterSpec& phi, const ComponentId& y)
{
    const FiberComponent& comp = c.component(y);
    if (const auto* ex = std::get_if<CharacterSpec::Exponent>(&phi.value)) {
        return mod(mul_mod(ex->a, comp.m, comp.e), comp.e);
    }
    const auto& raw = std::get<CharacterSpec::Raw>(phi.value).exponents;
    auto it = raw.find(y);
    std::int64_t n = it == raw.end() ? 0 : it->second;
    if (n < 0 || n >= comp.e) {
        detail::invalid_component(comp, "raw character exponent " + std::to_string(n) + " out of range [0, e)");
    }
    return n;
}

/// Rejects raw characters mentioning unknown components or out-of-range values.
inline void validate_character(const CoverDatum& c, const CharacterSpec& phi)
{
    if (const auto* raw = std::get_if<CharacterSpec::Raw>(&phi.value)) {
        for (const auto& [id, n] : raw->exponents) {
            (void)n;
            local_exponent(c, phi, id);
        }
    }
}

/// The conjugate character: local exponents (e_y - n) mod e_y.
inline CharacterSpec conjugate(const CoverDatum& c, const CharacterSpec& phi)
{
    if (const auto* ex = std::get_if<CharacterSpec::Exponent>(&phi.value)) {
        return CharacterSpec::exponent(mod(-ex->a, c.group_order));
    }
    std::map<ComponentId, std::int64_t> out;
    for (const auto& y : c.components) {
        out[y.id] = mod(-local_exponent(c, phi, y.id), y.e);
    }
    return CharacterSpec::raw(std::move(out));
}

/// phi^k: local exponents k * n mod e_y.
inline CharacterSpec power(const CoverDatum& c, const CharacterSpec& phi, std::int64_t k)
{
    if (const auto* ex = std::get_if<CharacterSpec::Exponent>(&phi.value)) {
        return CharacterSpec::exponent(mod(mul_mod(ex->a, mod(k, c.group_order), c.group_order), c.group_order));
    }
    std::map<ComponentId, std::int64_t> out;
    for (const auto& y : c.components) {
        out[y.id] = mul_mod(local_exponent(c, phi, y.id), mod(k, y.e), y.e);
    }
    return CharacterSpec::raw(std::move(out));
}

/// c_1(omega) . y = -y^2 - 2 chi(y, O_y).
inline Integer canonical_degree(const CoverDatum& c, const ComponentId& y)
{
    const FiberComponent& comp = c.component(y);
    return -comp.self_intersection - 2 * comp.chi_struct;
}

} // namespace eqchar

#endif // EQCHAR_COVER_MODEL_HPP
