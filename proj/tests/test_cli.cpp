#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#ifndef FAIRSACK_BIN
#error "FAIRSACK_BIN must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

// Run the CLI through the shell, capturing stdout. Arguments never contain
// single quotes, so every piece is single-quoted.
RunResult run(const std::vector<std::string>& args, const std::string& stdin_json = "") {
    std::string cmd;
    if (!stdin_json.empty()) cmd += "printf '%s' '" + stdin_json + "' | ";
    cmd += "'" FAIRSACK_BIN "'";
    for (const std::string& a : args) cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('\n', pos);
        if (end == std::string::npos) end = s.size();
        lines.push_back(s.substr(pos, end - pos));
        pos = end + 1;
    }
    return lines;
}

} // namespace

TEST_CASE("table lists the factorizations of t+1") {
    RunResult r = run({"table", "--tplus1", "12"});
    REQUIRE(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "2·2·3  (1+x)(1+x^2)(1+x^4+x^8)");
    CHECK(lines[2] == "2·6    (1+x)(1+x^2+x^4+x^6+x^8+x^10)");
    CHECK(lines[7] == "12     1+x+x^2+x^3+x^4+x^5+x^6+x^7+x^8+x^9+x^10+x^11");

    RunResult ascii = run({"table", "--total", "11", "--ascii"});
    REQUIRE(ascii.status == 0);
    CHECK(lines_of(ascii.out)[0] == "2*2*3  (1+x)(1+x^2)(1+x^4+x^8)");

    RunResult csv = run({"table", "--tplus1", "12", "--csv", "--ascii"});
    REQUIRE(csv.status == 0);
    auto csv_lines = lines_of(csv.out);
    REQUIRE(csv_lines.size() == 9);
    CHECK(csv_lines[0] == "a,dice");
    CHECK(csv_lines[1] == "\"2*2*3\",\"(1+x)(1+x^2)(1+x^4+x^8)\"");

    RunResult js = run({"table", "--tplus1", "12", "--json"});
    REQUIRE(js.status == 0);
    auto v = nlohmann::json::parse(js.out);
    CHECK(v["t"] == 11);
    REQUIRE(v["rows"].size() == 8);
    CHECK(v["rows"][0]["a"] == nlohmann::json({2, 2, 3}));
    CHECK(v["rows"][0]["dice"] == nlohmann::json({{0, 1}, {0, 2}, {0, 4, 8}}));
}

TEST_CASE("construct builds a sack from a pair") {
    RunResult r = run({"construct", "--a", "2*2*3", "--blocks", "[{1,3},{2}]", "--ascii"});
    REQUIRE(r.status == 0);
    CHECK(r.out == "2*2*3  [{1,3},{2}]  (1+x+x^4+x^5+x^8+x^9)(1+x^2)\n");

    RunResult single = run({"construct", "--a", "12"});
    REQUIRE(single.status == 0);
    CHECK(single.out == "12  [{1}]  1+x+x^2+x^3+x^4+x^5+x^6+x^7+x^8+x^9+x^10+x^11\n");

    RunResult js = run({"construct", "--json", R"({"a": [2,3,2], "blocks": [[1,3],[2]]})"});
    REQUIRE(js.status == 0);
    auto v = nlohmann::json::parse(js.out);
    CHECK(v["a"] == nlohmann::json({2, 3, 2}));
    CHECK(v["t"] == 11);
    CHECK(v["dice"] == nlohmann::json({{0, 1, 6, 7}, {0, 2, 4}}));

    RunResult stdin_run = run({"construct"}, R"({"a": [2,2]})");
    REQUIRE(stdin_run.status == 0);
    CHECK(stdin_run.out == "2·2  [{1},{2}]  (1+x)(1+x^2)\n");

    // blocks may merge adjacent positions: the pair is then not canonical
    RunResult merged = run({"construct", "--a", "2*5", "--blocks", "[{1,2}]", "--ascii"});
    REQUIRE(merged.status == 0);
    CHECK(merged.out == "2*5  [{1,2}]  1+x+x^2+x^3+x^4+x^5+x^6+x^7+x^8+x^9\n");

    CHECK(run({"construct", "--a", "2*5", "--blocks", "[{1,3},{2}]"}).status == 1);
    CHECK(run({"construct", "--blocks", "[{1}]"}, "{}").status == 1);
}

TEST_CASE("verify reports fairness through the exit code") {
    RunResult fair = run({"verify"}, "[[0,1],[0,2]]");
    CHECK(fair.status == 0);
    CHECK(fair.out == "fair: yes\n");

    RunResult unfair = run({"verify"}, "[[0,1],[0,1]]");
    CHECK(unfair.status == 1);
    auto lines = lines_of(unfair.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "fair: no");
    CHECK(lines[1] == "collision at 1: (0,1) and (1,0)");

    RunResult gap = run({"verify"}, "[[0,2]]");
    CHECK(gap.status == 1);
    CHECK(lines_of(gap.out)[1] == "missing totals: 1");

    RunResult rational = run({"verify"}, R"({"dice": [{"probs": ["1/2","1/2"]}, [0,2]]})");
    CHECK(rational.status == 0);

    RunResult skew = run({"verify", "--json"}, R"([{"probs": ["1/3","2/3"]}])");
    CHECK(skew.status == 1);
    auto v = nlohmann::json::parse(skew.out);
    CHECK(v["fair"] == false);
    CHECK(v["semifair_failures"] == nlohmann::json({0}));

    RunResult empty = run({"verify"}, "[]");
    CHECK(empty.status == 0); // the empty sack is fair with t = 0
}

TEST_CASE("decompose prints the canonical pair") {
    RunResult r = run({"decompose"}, "[[0,1,4,5,8,9],[0,2]]");
    REQUIRE(r.status == 0);
    CHECK(r.out == "2·2·3  [{1,3},{2}]\n");

    RunResult js = run({"decompose", "--json"}, "[[0,1],[0,2],[0,4,8]]");
    REQUIRE(js.status == 0);
    auto v = nlohmann::json::parse(js.out);
    CHECK(v["a"] == nlohmann::json({2, 2, 3}));
    CHECK(v["blocks"] == nlohmann::json({{1}, {2}, {3}}));

    CHECK(run({"decompose"}, "[[0,1],[0,1]]").status == 1);
}

TEST_CASE("enumerate lists and cross-checks") {
    RunResult r = run({"enumerate", "--tplus1", "12", "--oracle"});
    REQUIRE(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 14);
    CHECK(lines[0] == "t: 11");
    CHECK(lines[1] == "count: 11");
    CHECK(lines[2] == "oracle: agree");

    RunResult limited = run({"enumerate", "--tplus1", "12", "--limit", "3"});
    REQUIRE(limited.status == 0);
    CHECK(lines_of(limited.out).size() == 5);
    CHECK(lines_of(limited.out)[1] == "count: 11");

    RunResult js = run({"enumerate", "-t", "11", "--json", "--limit", "2", "--jobs", "2"});
    REQUIRE(js.status == 0);
    auto v = nlohmann::json::parse(js.out);
    CHECK(v["count"] == 11);
    CHECK(v["sacks"].size() == 2);

    RunResult csv = run({"enumerate", "--tplus1", "8", "--csv", "--ascii", "--oracle"});
    REQUIRE(csv.status == 0);
    auto csv_lines = lines_of(csv.out);
    REQUIRE(csv_lines.size() == 7);
    CHECK(csv_lines[0] == "a,blocks,dice");
    CHECK(csv_lines[1] == "\"2*2*2\",\"[{1},{2},{3}]\",\"(1+x)(1+x^2)(1+x^4)\"");
    CHECK(csv_lines[6] == "oracle,agree");
}

TEST_CASE("atomize splits sacks and dice") {
    RunResult sack = run({"atomize"}, "[[0,1,4,5,8,9],[0,2]]");
    REQUIRE(sack.status == 0);
    CHECK(sack.out == "(1+x)(1+x^4+x^8)(1+x^2)\n");

    RunResult die = run({"atomize"}, "[0,1,2,3,4,5,6,7,8,9,10,11]");
    REQUIRE(die.status == 0);
    auto lines = lines_of(die.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "(1+x)(1+x^2)(1+x^4+x^8)");
    CHECK(lines[1] == "(1+x)(1+x^2+x^4)(1+x^6)");
    CHECK(lines[2] == "(1+x+x^2)(1+x^3)(1+x^6)");

    RunResult limited = run({"atomize", "--limit", "1", "--json"},
                            "[0,1,2,3,4,5,6,7,8,9,10,11]");
    REQUIRE(limited.status == 0);
    auto v = nlohmann::json::parse(limited.out);
    CHECK(v["count"] == 1);
    CHECK(v["atomizations"][0] == nlohmann::json({{0, 1}, {0, 2}, {0, 4, 8}}));

    RunResult none = run({"atomize"}, "[0,2,3,5]");
    REQUIRE(none.status == 0);
    CHECK(none.out == "(1+x^2)(1+x^3)\n"); // an atomization, though no fair sack holds it

    CHECK(run({"atomize"}, "[[0,1],[0,1]]").status == 1);
}

TEST_CASE("member reports the chain") {
    RunResult member = run({"member"}, "[0,1,4,5,8,9]");
    REQUIRE(member.status == 0);
    CHECK(member.out == "(2,1)(3,4)\n");

    RunResult none = run({"member"}, "[0,2,3,5]");
    REQUIRE(none.status == 0);
    CHECK(none.out == "none\n");

    RunResult trivial = run({"member"}, "[0]");
    REQUIRE(trivial.status == 0);
    CHECK(trivial.out == "()\n");

    RunResult skew = run({"member", "--json"}, R"({"probs": ["1/3","2/3"]})");
    REQUIRE(skew.status == 0);
    auto v = nlohmann::json::parse(skew.out);
    CHECK(v["member"] == false);

    RunResult rational = run({"member", "--json"}, R"({"probs": ["1/2","1/2"]})");
    REQUIRE(rational.status == 0);
    auto w = nlohmann::json::parse(rational.out);
    CHECK(w["member"] == true);
    CHECK(w["chain"] == nlohmann::json({{2, 1}}));

    CHECK(run({"member"}, "[[0,1],[0,2]]").status == 1);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).status == 2);
    CHECK(run({"table"}).status == 2);
    CHECK(run({"table", "--total", "3", "--tplus1", "4"}).status == 2);
    CHECK(run({"table", "--tplus1", "0"}).status == 2);
    CHECK(run({"table", "--no-such-flag"}).status == 2);
    CHECK(run({"verify", "--json", "--table"}, "[]").status == 2);
    CHECK(run({"no-such-command"}).status == 2);
}

TEST_CASE("domain errors exit with 1") {
    CHECK(run({"verify"}, "[[0,").status == 1);
    CHECK(run({"verify", "/no/such/file.json"}).status == 1);
    CHECK(run({"decompose"}, "[[1,2]]").status == 1);
    CHECK(run({"member"}, "[0,1,1]").status == 1);
    CHECK(run({"enumerate", "--tplus1", "64", "--oracle"}).status == 1);
}

TEST_CASE("help exits cleanly") {
    CHECK(run({"--help"}).status == 0);
    CHECK(run({"table", "--help"}).status == 0);
}
