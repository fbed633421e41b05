// Command-line front end: parses flags, runs one command, prints its report.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqchar/commands.hpp"

namespace {

using namespace eqchar;

SheafSpec parse_sheaf(const std::string& s) { return SheafSpec{parse_sheaf_kind(s)}; }

// "y0=2,y1=0" -> {y0: 2, y1: 0}
CharacterSpec parse_raw_exponents(const std::string& text)
{
    std::map<ComponentId, std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InvalidInput("raw exponent '" + item + "' is not of the form id=n");
        }
        std::string id = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        std::size_t used = 0;
        std::int64_t n = 0;
        try {
            n = std::stoll(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) {
            throw InvalidInput("raw exponent '" + item + "' has a non-integer value");
        }
        if (!out.emplace(id, n).second) {
            throw InvalidInput("raw exponent for '" + id + "' given twice");
        }
    }
    return CharacterSpec::raw(std::move(out));
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text)
{
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw InvalidInput("range '" + text + "' is not of the form A..B");
    }
    try {
        return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw InvalidInput("range '" + text + "' is not of the form A..B");
    }
}

struct CharacterArgs
{
    std::optional<std::int64_t> exponent;
    std::string raw;
};

CharacterSpec character_from(const CharacterArgs& args)
{
    if (args.exponent) {
        return CharacterSpec::exponent(*args.exponent);
    }
    if (!args.raw.empty()) {
        return parse_raw_exponents(args.raw);
    }
    throw InvalidInput("give --character or --raw-exponents");
}

void emit(const cmd::CommandResult& r, const std::string& format)
{
    std::cout << (format == "text" ? cmd::render_text(r.report) : cmd::render_json(r.report));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Equivariant Euler characteristics of tame covers: resolvents, invariants, identities"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    // resolvent
    auto* res = app.add_subcommand("resolvent", "Resolvent divisor and support sets for one character");
    std::string res_cover, res_sheaf;
    CharacterArgs res_char;
    res->add_option("cover", res_cover, "Cover file (JSON)")->required();
    res->add_option("--sheaf", res_sheaf, "structure | canonical | canonical-half | custom")->required();
    auto* res_a = res->add_option("--character", res_char.exponent, "Character exponent a (phi = chi^a)");
    auto* res_raw = res->add_option("--raw-exponents", res_char.raw, "Per-component exponents id=n,...");
    res_a->excludes(res_raw);

    // invariants
    auto* inv = app.add_subcommand("invariants", "T, Euler differences and a(phi) per character");
    std::string inv_cover, inv_sheaf;
    CharacterArgs inv_char;
    bool inv_all = false;
    inv->add_option("cover", inv_cover, "Cover file (JSON)")->required();
    inv->add_option("--sheaf", inv_sheaf, "structure | canonical | canonical-half | custom")->required();
    auto* inv_a = inv->add_option("--character", inv_char.exponent, "Character exponent a");
    auto* inv_raw = inv->add_option("--raw-exponents", inv_char.raw, "Per-component exponents id=n,...");
    auto* inv_all_flag = inv->add_flag("--all-characters", inv_all, "Tabulate a = 1..n-1");
    inv_a->excludes(inv_raw)->excludes(inv_all_flag);
    inv_raw->excludes(inv_all_flag);

    // verify
    auto* ver = app.add_subcommand("verify", "Run an identity suite");
    bool v_stickel = false, v_conj = false;
    std::string v_range = "5..199";
    std::int64_t v_random = 1000;
    std::uint64_t v_seed = 42;
    std::vector<std::int64_t> v_bsum;
    auto* f_stickel = ver->add_flag("--lemma-6-3", v_stickel, "Stickelberger identities i-iii");
    ver->add_option("--l-range", v_range, "Prime range A..B");
    auto* f_conj = ver->add_flag("--corollary-3-8", v_conj, "Conjugation identities on random covers");
    ver->add_option("--random", v_random, "Number of random covers");
    ver->add_option("--seed", v_seed, "Generator seed");
    auto* f_bsum = ver->add_option("--eq-5-3", v_bsum, "b-sum factorisation: l s t u")->expected(4);
    f_stickel->excludes(f_conj)->excludes(f_bsum);
    f_conj->excludes(f_bsum);

    // modular
    auto* mod = app.add_subcommand("modular", "The modular-curve cover of prime order l over p");
    std::optional<std::int64_t> m_p;
    std::int64_t m_l = 0;
    bool m_search = false, m_strict = false;
    std::int64_t m_limit = 1000000;
    std::string m_emit;
    mod->add_option("--p", m_p, "Prime p = 1 (mod 24)");
    mod->add_option("--l", m_l, "Prime l > 3 dividing p - 1")->required();
    mod->add_flag("--search", m_search, "Search the smallest p with non-trivial norm images");
    mod->add_option("--limit", m_limit, "Search bound for p");
    mod->add_flag("--strict-paper-predicate", m_strict, "Search predicate p != 1 (mod h)");
    mod->add_option("--emit-cover", m_emit, "Write the cover datum to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? cmd::exit_ok : cmd::exit_input_error;
    }

    const auto start = std::chrono::steady_clock::now();
    int status = cmd::exit_ok;
    try {
        cmd::CommandResult r;
        if (*res) {
            CoverDatum c = io::read_cover_file(res_cover);
            r = cmd::resolvent(c, res_cover, parse_sheaf(res_sheaf), character_from(res_char));
        } else if (*inv) {
            CoverDatum c = io::read_cover_file(inv_cover);
            std::vector<CharacterSpec> chars;
            if (inv_all) {
                for (std::int64_t a = 1; a < c.group_order; ++a) {
                    chars.push_back(CharacterSpec::exponent(a));
                }
            } else {
                chars.push_back(character_from(inv_char));
            }
            r = cmd::invariants(c, inv_cover, parse_sheaf(inv_sheaf), chars);
        } else if (*ver) {
            if (v_stickel) {
                auto [lo, hi] = parse_range(v_range);
                r = cmd::verify_stickelberger_range(lo, hi);
            } else if (v_conj) {
                r = cmd::verify_conjugation_random(v_random, v_seed);
            } else if (v_bsum.size() == 4) {
                r = cmd::verify_b_sum(v_bsum[0], v_bsum[1], v_bsum[2], v_bsum[3]);
            } else {
                throw InvalidInput("give one of --lemma-6-3, --corollary-3-8, --eq-5-3");
            }
        } else if (*mod) {
            if (m_search) {
                r = cmd::modular_search(m_l, m_limit, m_strict);
            } else {
                if (!m_p) {
                    throw InvalidInput("--p is required unless --search is given");
                }
                ModularParams mp{*m_p, m_l};
                if (!m_emit.empty()) {
                    std::ofstream f(m_emit);
                    if (!f) {
                        throw InvalidInput("cannot write '" + m_emit + "'");
                    }
                    f << io::cover_to_json(build_cover(mp)).dump(2) << "\n";
                }
                r = cmd::modular(mp);
            }
        }
        emit(r, format);
        status = r.status;
    } catch (const eqchar::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = cmd::exit_input_error;
    } catch (const eqchar::DataConsistencyError& e) {
        std::cerr << "data consistency error: " << e.what() << "\n";
        status = cmd::exit_input_error;
    } catch (const eqchar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = cmd::exit_verification_failure;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cerr << "elapsed_ms: " << ms.count() << "\n";
    return status;
}
