#ifndef EQCHAR_IO_HPP
#define EQCHAR_IO_HPP

// JSON encodings: cover files (read and write) and the machine-readable
// pieces of command reports.

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eqchar/arith.hpp"
#include "eqchar/cover_model.hpp"
#include "eqchar/error.hpp"
#include "eqchar/galois_ring.hpp"
#include "eqchar/intersection.hpp"
#include "eqchar/real_quadratic.hpp"
#include "eqchar/resolvent.hpp"

namespace eqchar::io {

using Json = nlohmann::json;

/// Integers are JSON numbers while they fit in 64 bits, decimal strings beyond.
inline Json integer_json(const Integer& n)
{
    if (n <= std::numeric_limits<std::int64_t>::max() && n >= std::numeric_limits<std::int64_t>::min()) {
        return static_cast<std::int64_t>(n);
    }
    return n.str();
}

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json ring_json(const GaloisRingElement& x)
{
    Json terms = Json::array();
    for (const auto& [u, c] : x.coeffs()) {
        terms.push_back({u, integer_json(numerator_of(c)), integer_json(denominator_of(c))});
    }
    return {{"modulus", x.modulus()}, {"terms", terms}};
}

inline Json divisor_json(const ResolventDivisor& r, const CoverDatum& c)
{
    Json out = Json::object();
    for (const auto& y : c.components) {
        out[y.id] = rational_json(r[y.id]);
    }
    return out;
}

inline Json form_json(const QuadForm& f) { return {integer_json(f.a), integer_json(f.b), integer_json(f.c)}; }

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what)
{
    throw InvalidInput("cover file " + where + ": " + what);
}

inline const Json& member(const Json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key)) {
        schema_error(where, std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

inline Integer integer_field(const Json& v, const std::string& where)
{
    if (v.is_number_integer()) {
        return Integer(v.get<std::int64_t>());
    }
    if (v.is_string()) {
        try {
            return Integer(v.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    schema_error(where, "expected an integer");
}

inline std::int64_t small_field(const Json& v, const std::string& where)
{
    if (!v.is_number_integer()) {
        schema_error(where, "expected an integer");
    }
    return v.get<std::int64_t>();
}

} // namespace detail

/// Parses (without validating) a cover document. Errors carry the JSON
/// pointer of the offending field, or the byte offset of a syntax error.
inline CoverDatum cover_from_json(const Json& doc)
{
    CoverDatum c;
    c.group_order = detail::small_field(detail::member(doc, "group_order", "/"), "/group_order");
    c.residue_prime = detail::small_field(detail::member(doc, "residue_prime", "/"), "/residue_prime");
    const Json& comps = detail::member(doc, "components", "/");
    if (!comps.is_array()) {
        detail::schema_error("/components", "expected an array");
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string at = "/components/" + std::to_string(i);
        const Json& j = comps[i];
        FiberComponent y;
        const Json& id = detail::member(j, "id", at);
        if (!id.is_string()) {
            detail::schema_error(at + "/id", "expected a string");
        }
        y.id = id.get<std::string>();
        y.e = detail::small_field(detail::member(j, "e", at), at + "/e");
        y.m = j.contains("m") ? detail::small_field(j.at("m"), at + "/m") : 0;
        y.self_intersection = detail::integer_field(detail::member(j, "self_intersection", at), at + "/self_intersection");
        y.chi_struct = detail::integer_field(detail::member(j, "chi_struct", at), at + "/chi_struct");
        if (j.contains("d_custom") && !j.at("d_custom").is_null()) {
            y.d_custom = detail::integer_field(j.at("d_custom"), at + "/d_custom");
        }
        c.components.push_back(std::move(y));
    }
    if (doc.contains("intersections")) {
        const Json& xs = doc.at("intersections");
        if (!xs.is_array()) {
            detail::schema_error("/intersections", "expected an array");
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const std::string at = "/intersections/" + std::to_string(i);
            const Json& t = xs[i];
            if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string()) {
                detail::schema_error(at, "expected [id, id, value]");
            }
            auto y = t[0].get<std::string>();
            auto z = t[1].get<std::string>();
            Integer v = detail::integer_field(t[2], at + "/2");
            auto prev = c.intersections.find(y, z);
            if (prev && *prev != v) {
                detail::schema_error(at, "asymmetric intersection matrix at ('" + y + "', '" + z + "')");
            }
            c.intersections.set(y, z, v);
        }
    }
    return c;
}

inline Json cover_to_json(const CoverDatum& c)
{
    Json comps = Json::array();
    for (const auto& y : c.components) {
        Json j{{"id", y.id},
               {"e", y.e},
               {"m", y.m},
               {"self_intersection", integer_json(y.self_intersection)},
               {"chi_struct", integer_json(y.chi_struct)}};
        if (y.d_custom) {
            j["d_custom"] = integer_json(*y.d_custom);
        }
        comps.push_back(std::move(j));
    }
    Json xs = Json::array();
    for (const auto& [key, v] : c.intersections.entries()) {
        if (key.first < key.second) {
            xs.push_back({key.first, key.second, integer_json(v)});
        }
    }
    return {{"group_order", c.group_order}, {"residue_prime", c.residue_prime}, {"components", comps},
            {"intersections", xs}};
}

inline Json parse_document(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(origin + ": JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

/// Reads, parses and validates a cover file.
inline CoverDatum read_cover_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open cover file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return validate_cover(cover_from_json(parse_document(ss.str(), path)));
}

} // namespace eqchar::io

#endif // EQCHAR_IO_HPP
