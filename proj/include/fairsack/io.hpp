#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fairsack/construct.hpp"
#include "fairsack/decompose.hpp"
#include "fairsack/enumerate.hpp"
#include "fairsack/errors.hpp"
#include "fairsack/rational_die.hpp"
#include "fairsack/support_poly.hpp"
#include "fairsack/verify.hpp"

namespace fairsack {

// Unreadable input (malformed JSON or text forms of dice, factorizations,
// partitions).
class ParseError : public Error {
public:
    using Error::Error;
};

namespace io {

using json = nlohmann::json;

// ---- rendering ----------------------------------------------------------

inline json to_json(const SupportPoly& p) {
    return json(p.exponents());
}

inline json to_json(const RationalDie& d) {
    json probs = json::array();
    for (const Rational& p : d.probabilities())
        probs.push_back(p.get_str());
    return json{{"probs", std::move(probs)}};
}

inline json to_json(const Sack& s) {
    json dice = json::array();
    for (const SupportPoly& d : s.dice()) dice.push_back(to_json(d));
    return json{{"t", s.total()}, {"dice", std::move(dice)}};
}

inline json to_json(const OrderedFactorization& a) {
    return json(a.factors());
}

inline json to_json(const IntervalPartition& p) {
    return json(p.blocks());
}

inline json pair_to_json(const OrderedFactorization& a, const IntervalPartition& p) {
    return json{{"a", to_json(a)}, {"blocks", to_json(p)}};
}

inline json to_json(const FairnessReport& r) {
    json collisions = json::array();
    for (const TotalCollision& c : r.total_collisions)
        collisions.push_back(json{{"s", c.total}, {"tuples", json{c.first, c.second}}});
    return json{{"fair", r.fair},
                {"semifair_failures", r.semifair_failures},
                {"total_collisions", std::move(collisions)},
                {"missing_totals", r.missing_totals}};
}

inline json to_json(const DieChain& c) {
    json links = json::array();
    for (const auto& [a, b] : c.links()) links.push_back(json{a, b});
    return links;
}

inline json to_json(const EnumerationResult& r) {
    json sacks = json::array();
    for (const EnumeratedSack& e : r.sacks) {
        json dice = json::array();
        for (const SupportPoly& d : e.sack.dice()) dice.push_back(to_json(d));
        sacks.push_back(json{{"a", to_json(e.a)},
                             {"blocks", to_json(e.blocks)},
                             {"dice", std::move(dice)}});
    }
    return json{{"t", r.t}, {"count", r.sacks.size()}, {"sacks", std::move(sacks)}};
}

// "(1+x)(1+x^2+x^4)" for several dice, bare "1+x+x^2" for one, "1" for none.
inline std::string sack_to_text(const Sack& s) {
    if (s.size() == 0) return "1";
    if (s.size() == 1) return s.dice()[0].to_string();
    std::string out;
    for (const SupportPoly& d : s.dice()) {
        out += '(';
        out += d.to_string();
        out += ')';
    }
    return out;
}

inline std::string chain_to_text(const DieChain& c) {
    if (c.links().empty()) return "()";
    std::string out;
    for (const auto& [a, b] : c.links()) {
        out += '(';
        out += std::to_string(a);
        out += ',';
        out += std::to_string(b);
        out += ')';
    }
    return out;
}

// ---- parsing ------------------------------------------------------------

namespace detail {

inline Exponent integer_from_json(const json& v, const char* what) {
    if (!v.is_number_integer())
        throw ParseError(std::string(what) + " must be an integer");
    return v.get<Exponent>();
}

inline std::vector<Exponent> exponents_from_json(const json& v, const char* what) {
    if (!v.is_array())
        throw ParseError(std::string(what) + " must be an array of integers");
    std::vector<Exponent> out;
    out.reserve(v.size());
    for (const json& e : v) out.push_back(integer_from_json(e, what));
    return out;
}

} // namespace detail

inline SupportPoly support_from_json(const json& v) {
    try {
        return SupportPoly(detail::exponents_from_json(v, "support"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad support: ") + e.what());
    }
}

inline SupportPoly support_from_text(const std::string& text) {
    std::string stripped;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) stripped += ch;
    if (stripped.empty()) throw ParseError("empty polynomial");
    if (stripped == "0") return SupportPoly{};
    std::vector<Exponent> exponents;
    std::size_t pos = 0;
    while (pos <= stripped.size()) {
        std::size_t end = stripped.find('+', pos);
        if (end == std::string::npos) end = stripped.size();
        const std::string term = stripped.substr(pos, end - pos);
        if (term == "1")
            exponents.push_back(0);
        else if (term == "x")
            exponents.push_back(1);
        else if (term.rfind("x^", 0) == 0) {
            try {
                std::size_t used = 0;
                exponents.push_back(std::stoll(term.substr(2), &used));
                if (used != term.size() - 2) throw std::invalid_argument(term);
            } catch (const std::exception&) {
                throw ParseError("bad exponent in term '" + term + "'");
            }
        } else {
            throw ParseError("bad term '" + term + "'");
        }
        pos = end + 1;
    }
    try {
        return SupportPoly(std::move(exponents));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad polynomial: ") + e.what());
    }
}

inline Rational rational_from_json(const json& v) {
    if (v.is_number_integer()) {
        Rational r(v.get<long>());
        return r;
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            Rational r(s);
            if (r.get_den() == 0) // canonicalize() would divide by zero
                throw std::invalid_argument(s);
            r.canonicalize();
            return r;
        } catch (const std::exception&) {
            throw ParseError("bad rational '" + s + "'");
        }
    }
    throw ParseError("probabilities must be integers or strings like \"1/6\"");
}

inline RationalDie die_from_probs_json(const json& v) {
    if (!v.is_object() || !v.contains("probs") || !v["probs"].is_array())
        throw ParseError("rational die must be {\"probs\": [...]}");
    std::vector<Rational> probs;
    for (const json& p : v["probs"]) probs.push_back(rational_from_json(p));
    try {
        return RationalDie(std::move(probs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad die: ") + e.what());
    }
}

// A die arrives either as a support array or as exact probabilities.
using ParsedDie = std::variant<SupportPoly, RationalDie>;

inline ParsedDie parse_die(const json& v) {
    if (v.is_array()) return support_from_json(v);
    if (v.is_object() && v.contains("probs")) return die_from_probs_json(v);
    throw ParseError("a die is either [exponents...] or {\"probs\": [...]}");
}

// Normalized view; semifairness is enforced when the die came as
// probabilities.
inline SupportPoly die_support(const ParsedDie& d) {
    if (std::holds_alternative<SupportPoly>(d)) return std::get<SupportPoly>(d);
    return normalize(std::get<RationalDie>(d));
}

inline RationalDie die_rational(const ParsedDie& d) {
    if (std::holds_alternative<RationalDie>(d)) return std::get<RationalDie>(d);
    try {
        return denormalize(std::get<SupportPoly>(d));
    } catch (const InvalidSupportError& e) {
        throw ParseError(std::string("bad die: ") + e.what());
    }
}

struct ParsedSack {
    std::vector<ParsedDie> dice;
    bool any_rational = false;

    Sack normalized() const {
        std::vector<SupportPoly> out;
        out.reserve(dice.size());
        for (const ParsedDie& d : dice) out.push_back(die_support(d));
        try {
            return Sack(std::move(out));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("bad sack: ") + e.what());
        }
    }

    std::vector<RationalDie> rationals() const {
        std::vector<RationalDie> out;
        out.reserve(dice.size());
        for (const ParsedDie& d : dice) out.push_back(die_rational(d));
        return out;
    }
};

inline ParsedSack parse_sack(const json& v) {
    const json* dice = nullptr;
    if (v.is_object() && v.contains("dice") && v["dice"].is_array())
        dice = &v["dice"];
    else if (v.is_array())
        dice = &v;
    else
        throw ParseError("a sack is {\"dice\": [...]} or a bare array of dice");
    ParsedSack out;
    for (const json& d : *dice) {
        out.dice.push_back(parse_die(d));
        if (std::holds_alternative<RationalDie>(out.dice.back())) out.any_rational = true;
    }
    return out;
}

// Flat integer array or probs object: one die. Array of arrays (or
// {"dice": ...}): a sack.
inline bool looks_like_single_die(const json& v) {
    if (v.is_object()) return v.contains("probs");
    if (!v.is_array()) return false;
    if (v.empty()) return false;
    for (const json& e : v)
        if (!e.is_number_integer()) return false;
    return true;
}

inline OrderedFactorization factorization_from_json(const json& v) {
    try {
        return OrderedFactorization(detail::exponents_from_json(v, "factor"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad factorization: ") + e.what());
    }
}

inline OrderedFactorization factorization_from_text(const std::string& text) {
    std::string cleaned;
    for (std::size_t i = 0; i < text.size();) {
        if (text.compare(i, 2, "·") == 0) {
            cleaned += ' ';
            i += 2;
        } else if (text[i] == '*' || text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))) {
            cleaned += ' ';
            ++i;
        } else {
            cleaned += text[i];
            ++i;
        }
    }
    std::vector<Exponent> factors;
    std::size_t pos = 0;
    while (pos < cleaned.size()) {
        if (cleaned[pos] == ' ') {
            ++pos;
            continue;
        }
        std::size_t end = cleaned.find(' ', pos);
        if (end == std::string::npos) end = cleaned.size();
        const std::string tok = cleaned.substr(pos, end - pos);
        try {
            std::size_t used = 0;
            factors.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("bad factor '" + tok + "'");
        }
        pos = end;
    }
    if (factors.empty()) throw ParseError("empty factorization");
    if (factors.size() == 1 && factors[0] == 1) return OrderedFactorization{};
    try {
        return OrderedFactorization(std::move(factors));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad factorization: ") + e.what());
    }
}

inline IntervalPartition partition_from_json(const json& v) {
    if (!v.is_array()) throw ParseError("blocks must be an array of arrays");
    std::vector<std::vector<int>> blocks;
    for (const json& b : v) {
        if (!b.is_array()) throw ParseError("blocks must be an array of arrays");
        std::vector<int> block;
        for (const json& e : b)
            block.push_back(static_cast<int>(detail::integer_from_json(e, "block element")));
        blocks.push_back(std::move(block));
    }
    try {
        return IntervalPartition(std::move(blocks));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad partition: ") + e.what());
    }
}

inline IntervalPartition partition_from_text(const std::string& text) {
    std::vector<std::vector<int>> blocks;
    std::size_t i = 0;
    auto skip_ws = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw ParseError(std::string("expected '") + c + "' in partition");
        ++i;
    };
    expect('[');
    skip_ws();
    if (i < text.size() && text[i] == ']') {
        ++i;
    } else {
        while (true) {
            expect('{');
            std::vector<int> block;
            while (true) {
                skip_ws();
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (start == i) throw ParseError("expected an element in partition block");
                block.push_back(std::stoi(text.substr(start, i - start)));
                skip_ws();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                break;
            }
            expect('}');
            blocks.push_back(std::move(block));
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        expect(']');
    }
    skip_ws();
    if (i != text.size()) throw ParseError("trailing characters after partition");
    try {
        return IntervalPartition(std::move(blocks));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad partition: ") + e.what());
    }
}

} // namespace io
} // namespace fairsack
