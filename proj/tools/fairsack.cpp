#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairsack.hpp"

namespace {

using fairsack::Exponent;
using fairsack::io::json;

// Missing or contradictory flags noticed after CLI11 parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& arg) {
    if (arg.empty() || arg == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    if (arg[0] == '{' || arg[0] == '[') return arg;
    std::ifstream file(arg);
    if (!file) throw fairsack::ParseError("cannot read '" + arg + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

json parse_json_input(const std::string& arg) {
    const std::string text = read_input(arg);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw fairsack::ParseError(std::string("bad JSON input: ") + e.what());
    }
}

// Display width of a UTF-8 string whose only multibyte character is the
// middle dot.
std::size_t display_width(const std::string& s) {
    std::size_t w = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xc0) != 0x80) ++w;
    return w;
}

std::string pad_to(const std::string& s, std::size_t width) {
    std::string out = s;
    for (std::size_t w = display_width(s); w < width; ++w) out += ' ';
    return out;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

enum class Mode { table, json_out, csv };

struct Options {
    bool ascii = false;
    bool as_json = false;
    bool as_table = false;
    bool as_csv = false;
    bool oracle = false;
    Exponent total = -1;
    Exponent tplus1 = -1;
    std::size_t limit = 0;
    std::size_t die_limit = 1000;
    unsigned jobs = 1;
    std::string a_text;
    std::string blocks_text;
    std::string input = "-";

    Mode mode() const {
        if (as_json) return Mode::json_out;
        if (as_csv) return Mode::csv;
        return Mode::table;
    }

    Exponent t() const {
        if (total >= 0 && tplus1 >= 0)
            throw UsageError("give only one of --total and --tplus1");
        if (total >= 0) return total;
        if (tplus1 >= 1) return tplus1 - 1;
        if (tplus1 == 0) throw UsageError("--tplus1 must be at least 1");
        throw UsageError("one of --total or --tplus1 is required");
    }
};

void add_mode_flags(CLI::App* cmd, Options& opt, bool with_csv) {
    CLI::Option* j = cmd->add_flag("--json", opt.as_json, "emit JSON");
    CLI::Option* t = cmd->add_flag("--table", opt.as_table, "emit readable text (default)");
    j->excludes(t);
    t->excludes(j);
    if (with_csv) {
        CLI::Option* c = cmd->add_flag("--csv", opt.as_csv, "emit CSV");
        c->excludes(j);
        c->excludes(t);
        j->excludes(c);
        t->excludes(c);
    }
}

void print_fairness_text(const fairsack::FairnessReport& r, std::ostream& os) {
    os << "fair: " << (r.fair ? "yes" : "no") << "\n";
    if (!r.semifair_failures.empty()) {
        os << "not semifair:";
        for (std::size_t i : r.semifair_failures) os << " " << i;
        os << "\n";
    }
    for (const fairsack::TotalCollision& c : r.total_collisions) {
        os << "collision at " << c.total << ": (";
        for (std::size_t i = 0; i < c.first.size(); ++i) os << (i ? "," : "") << c.first[i];
        os << ") and (";
        for (std::size_t i = 0; i < c.second.size(); ++i) os << (i ? "," : "") << c.second[i];
        os << ")\n";
    }
    if (!r.missing_totals.empty()) {
        os << "missing totals:";
        for (Exponent s : r.missing_totals) os << " " << s;
        os << "\n";
    }
}

int run_table(const Options& opt) {
    const Exponent t = opt.t();
    auto factorizations = fairsack::ordered_factorizations(fairsack::checked_add(t, 1));
    if (opt.mode() == Mode::json_out) {
        json rows = json::array();
        for (const auto& a : factorizations)
            rows.push_back(
                json{{"a", fairsack::io::to_json(a)},
                     {"dice", fairsack::io::to_json(fairsack::factorization_sack(a))["dice"]}});
        std::cout << json{{"t", t}, {"rows", std::move(rows)}}.dump() << "\n";
        return 0;
    }
    if (opt.mode() == Mode::csv) {
        std::cout << "a,dice\n";
        for (const auto& a : factorizations)
            std::cout << csv_quote(a.to_string(opt.ascii)) << ","
                      << csv_quote(fairsack::io::sack_to_text(fairsack::factorization_sack(a)))
                      << "\n";
        return 0;
    }
    std::size_t width = 0;
    for (const auto& a : factorizations)
        width = std::max(width, display_width(a.to_string(opt.ascii)));
    for (const auto& a : factorizations)
        std::cout << pad_to(a.to_string(opt.ascii), width + 2)
                  << fairsack::io::sack_to_text(fairsack::factorization_sack(a)) << "\n";
    return 0;
}

int run_construct(const Options& opt) {
    fairsack::OrderedFactorization a;
    fairsack::IntervalPartition p;
    bool have_a = false;
    bool have_blocks = false;
    if (!opt.a_text.empty()) {
        a = fairsack::io::factorization_from_text(opt.a_text);
        have_a = true;
    }
    if (!opt.blocks_text.empty()) {
        p = fairsack::io::partition_from_text(opt.blocks_text);
        have_blocks = true;
    }
    if (!have_a) {
        json v = parse_json_input(opt.input);
        if (!v.is_object() || !v.contains("a"))
            throw fairsack::ParseError("construct input needs {\"a\": [...]} or --a");
        a = fairsack::io::factorization_from_json(v["a"]);
        if (!have_blocks && v.contains("blocks")) {
            p = fairsack::io::partition_from_json(v["blocks"]);
            have_blocks = true;
        }
    }
    if (!have_blocks) p = fairsack::IntervalPartition::singletons(a.size());
    fairsack::Sack sack = fairsack::partition_sack(a, p);
    if (opt.mode() == Mode::json_out) {
        json out = fairsack::io::pair_to_json(a, p);
        out["t"] = sack.total();
        out["dice"] = fairsack::io::to_json(sack)["dice"];
        std::cout << out.dump() << "\n";
    } else {
        std::cout << a.to_string(opt.ascii) << "  " << p.to_string() << "  "
                  << fairsack::io::sack_to_text(sack) << "\n";
    }
    return 0;
}

int run_verify(const Options& opt) {
    fairsack::io::ParsedSack parsed = fairsack::io::parse_sack(parse_json_input(opt.input));
    fairsack::FairnessReport report = parsed.any_rational
                                          ? fairsack::check_gk(parsed.rationals())
                                          : fairsack::check_fair(parsed.normalized());
    if (opt.mode() == Mode::json_out)
        std::cout << fairsack::io::to_json(report).dump() << "\n";
    else
        print_fairness_text(report, std::cout);
    return report.fair ? 0 : 1;
}

int run_decompose(const Options& opt) {
    fairsack::Sack sack = fairsack::io::parse_sack(parse_json_input(opt.input)).normalized();
    auto [a, p] = fairsack::decompose_sack(sack);
    if (opt.mode() == Mode::json_out)
        std::cout << fairsack::io::pair_to_json(a, p).dump() << "\n";
    else
        std::cout << a.to_string(opt.ascii) << "  " << p.to_string() << "\n";
    return 0;
}

int run_enumerate(const Options& opt) {
    const Exponent t = opt.t();
    fairsack::EnumerationResult result = fairsack::enumerate_fair_sacks(t, opt.jobs);
    bool agree = true;
    if (opt.oracle) {
        std::vector<fairsack::Sack> expected = fairsack::brute_force_fair_sacks(t);
        std::vector<fairsack::Sack> got;
        got.reserve(result.sacks.size());
        for (const auto& e : result.sacks) got.push_back(e.sack.canonical());
        std::sort(got.begin(), got.end());
        agree = got == expected;
    }
    if (opt.mode() == Mode::json_out) {
        json out = fairsack::io::to_json(result);
        if (opt.limit && out["sacks"].size() > opt.limit) {
            json truncated = json::array();
            for (std::size_t i = 0; i < opt.limit; ++i) truncated.push_back(out["sacks"][i]);
            out["sacks"] = std::move(truncated);
        }
        if (opt.oracle) out["oracle"] = agree ? "agree" : "disagree";
        std::cout << out.dump() << "\n";
    } else if (opt.mode() == Mode::csv) {
        std::cout << "a,blocks,dice\n";
        std::size_t shown = 0;
        for (const auto& e : result.sacks) {
            if (opt.limit && shown++ >= opt.limit) break;
            std::cout << csv_quote(e.a.to_string(opt.ascii)) << ","
                      << csv_quote(e.blocks.to_string()) << ","
                      << csv_quote(fairsack::io::sack_to_text(e.sack)) << "\n";
        }
        if (opt.oracle) std::cout << "oracle," << (agree ? "agree" : "disagree") << "\n";
    } else {
        std::cout << "t: " << t << "\n";
        std::cout << "count: " << result.sacks.size() << "\n";
        if (opt.oracle) std::cout << "oracle: " << (agree ? "agree" : "disagree") << "\n";
        std::size_t wa = 0;
        std::size_t wb = 0;
        for (const auto& e : result.sacks) {
            wa = std::max(wa, display_width(e.a.to_string(opt.ascii)));
            wb = std::max(wb, display_width(e.blocks.to_string()));
        }
        std::size_t shown = 0;
        for (const auto& e : result.sacks) {
            if (opt.limit && shown++ >= opt.limit) break;
            std::cout << pad_to(e.a.to_string(opt.ascii), wa + 2)
                      << pad_to(e.blocks.to_string(), wb + 2)
                      << fairsack::io::sack_to_text(e.sack) << "\n";
        }
    }
    return agree ? 0 : 1;
}

int run_atomize(const Options& opt) {
    json v = parse_json_input(opt.input);
    if (fairsack::io::looks_like_single_die(v)) {
        fairsack::SupportPoly die = fairsack::io::die_support(fairsack::io::parse_die(v));
        auto atomizations = fairsack::sumset_atomizations(die, opt.die_limit);
        if (opt.mode() == Mode::json_out) {
            json list = json::array();
            for (const auto& factors : atomizations) {
                json one = json::array();
                for (const auto& f : factors) one.push_back(fairsack::io::to_json(f));
                list.push_back(std::move(one));
            }
            std::cout << json{{"die", fairsack::io::to_json(die)},
                              {"count", atomizations.size()},
                              {"atomizations", std::move(list)}}
                             .dump()
                      << "\n";
        } else if (atomizations.empty()) {
            std::cout << "none\n";
        } else {
            for (const auto& factors : atomizations)
                std::cout << fairsack::io::sack_to_text(fairsack::Sack(factors)) << "\n";
        }
        return 0;
    }
    fairsack::Sack atoms = fairsack::atomize(fairsack::io::parse_sack(v).normalized());
    if (opt.mode() == Mode::json_out)
        std::cout << fairsack::io::to_json(atoms).dump() << "\n";
    else
        std::cout << fairsack::io::sack_to_text(atoms) << "\n";
    return 0;
}

int run_member(const Options& opt) {
    json v = parse_json_input(opt.input);
    if (!fairsack::io::looks_like_single_die(v))
        throw fairsack::ParseError("member expects a single die");
    fairsack::io::ParsedDie die = fairsack::io::parse_die(v);
    std::optional<fairsack::DieChain> chain;
    if (std::holds_alternative<fairsack::RationalDie>(die) &&
        !fairsack::is_semifair(std::get<fairsack::RationalDie>(die)).semifair) {
        chain = std::nullopt; // no fair sack holds a die that is not semifair
    } else {
        chain = fairsack::die_membership(fairsack::io::die_support(die));
    }
    if (opt.mode() == Mode::json_out) {
        json out{{"member", chain.has_value()}};
        if (chain) out["chain"] = fairsack::io::to_json(*chain);
        std::cout << out.dump() << "\n";
    } else {
        std::cout << (chain ? fairsack::io::chain_to_text(*chain) : "none") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fair sacks: multisets of dice whose total is uniform"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--ascii", opt.ascii, "write * instead of the middle dot");

    std::function<int(const Options&)> action;

    auto* table =
        app.add_subcommand("table", "ordered factorizations of t+1 and their sacks");
    table->fallthrough();
    table->add_option("--total,-t", opt.total, "total t of the sacks");
    table->add_option("--tplus1", opt.tplus1, "t+1, the number of totals");
    add_mode_flags(table, opt, true);
    table->callback([&] { action = run_table; });

    auto* construct = app.add_subcommand(
        "construct", "build the sack of a factorization and block partition");
    construct->fallthrough();
    construct->add_option("--a", opt.a_text, "ordered factorization, e.g. 2*2*3");
    construct->add_option("--blocks", opt.blocks_text, "partition, e.g. [{1,3},{2}]");
    construct->add_option("input", opt.input, "JSON {\"a\":..,\"blocks\":..}, file, or -");
    add_mode_flags(construct, opt, false);
    construct->callback([&] { action = run_construct; });

    auto* verify = app.add_subcommand("verify", "check a sack for fairness");
    verify->fallthrough();
    verify->add_option("input", opt.input, "sack JSON, file, or -");
    add_mode_flags(verify, opt, false);
    verify->callback([&] { action = run_verify; });

    auto* decompose = app.add_subcommand(
        "decompose", "canonical factorization and blocks of a fair sack");
    decompose->fallthrough();
    decompose->add_option("input", opt.input, "sack JSON, file, or -");
    add_mode_flags(decompose, opt, false);
    decompose->callback([&] { action = run_decompose; });

    auto* enumerate = app.add_subcommand("enumerate", "all fair sacks with total t");
    enumerate->fallthrough();
    enumerate->add_option("--total,-t", opt.total, "total t of the sacks");
    enumerate->add_option("--tplus1", opt.tplus1, "t+1, the number of totals");
    enumerate->add_flag("--oracle", opt.oracle, "cross-check against the exhaustive search");
    enumerate->add_option("--limit", opt.limit, "list at most this many sacks");
    enumerate->add_option("--jobs", opt.jobs, "worker threads");
    add_mode_flags(enumerate, opt, true);
    enumerate->callback([&] { action = run_enumerate; });

    auto* atomize =
        app.add_subcommand("atomize", "split a fair sack (or one die) into atomic dice");
    atomize->fallthrough();
    atomize->add_option("input", opt.input, "sack or die JSON, file, or -");
    atomize->add_option("--limit", opt.die_limit,
                        "cap on atomizations of a single die (0 for all)");
    add_mode_flags(atomize, opt, false);
    atomize->callback([&] { action = run_atomize; });

    auto* member = app.add_subcommand("member", "does this die lie in any fair sack?");
    member->fallthrough();
    member->add_option("input", opt.input, "die JSON, file, or -");
    add_mode_flags(member, opt, false);
    member->callback([&] { action = run_member; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return action ? action(opt) : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fairsack::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
