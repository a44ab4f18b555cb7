#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tate/bundles.hpp"
#include "tate/cli.hpp"
#include "tate/complex_io.hpp"

#include "json.hpp"

#include <cstdio>

using namespace tate;

TEST_CASE("complex file format round trip") {
    auto c = *t_star_s2().build(3);
    std::string text = complex_to_json(c);
    EquivariantComplex back = complex_from_json(text);
    REQUIRE(back.generators.size() == c.generators.size());
    for (size_t i = 0; i < c.generators.size(); ++i) {
        CHECK(back.generators[i].id == c.generators[i].id);
        CHECK(back.generators[i].degree == c.generators[i].degree);
        CHECK(back.generators[i].mu_level == c.generators[i].mu_level);
        CHECK(back.generators[i].h_action == c.generators[i].h_action);
    }
    REQUIRE(back.boundary.size() == c.boundary.size());
    for (auto& [src, terms] : c.boundary) {
        auto& bt = back.boundary.at(src);
        REQUIRE(bt.size() == terms.size());
        for (size_t i = 0; i < terms.size(); ++i) {
            CHECK(bt[i].coeff == terms[i].coeff);
            CHECK(bt[i].u_shift == terms[i].u_shift);
            CHECK(bt[i].target == terms[i].target);
        }
    }
    CHECK(validate(back).ok());
    // emitting the parsed complex reproduces the document
    CHECK(complex_to_json(back) == text);

    // exact fractions survive the string form
    CHECK(rat_str(back.gen("d1-").h_action) == "3/2");
}

TEST_CASE("file save and load") {
    auto c = *cn_complex(1).build(3);
    std::string path = "test_complex_roundtrip.json";
    save_complex_file(c, path);
    EquivariantComplex back = load_complex_file(path);
    CHECK(complex_to_json(back) == complex_to_json(c));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_complex_file("does_not_exist.json"), TateError);
}

TEST_CASE("structured output round-trips and reports check status") {
    CliResult r = cli_run({"xn-report", "--n-max", "6"});
    CHECK(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.structured);
    CHECK(doc.at("command") == "xn-report");
    CHECK(doc.at("allChecksPassed") == true);
    // parse(emit(report)) == report
    CHECK(nlohmann::json::parse(doc.dump(2)) == doc);

    CliResult g = cli_run({"group-qa", "--seq", "k+1", "--depth", "50"});
    CHECK(g.exit_code == 0);
    nlohmann::json gd = nlohmann::json::parse(g.structured);
    CHECK(gd.at("results").at("colimit") == "Q");

    // a constant sequence is divisible only by its own prime powers
    CliResult bad = cli_run({"group-qa", "--seq", "const:2", "--depth", "60"});
    nlohmann::json bd = nlohmann::json::parse(bad.structured);
    CHECK(bd.at("results").at("colimit") == "proper subgroup of Q");

    // all-ones sequence: the colimit is the integers
    CliResult ones = cli_run({"group-qa", "--seq", "const:1", "--depth", "10"});
    nlohmann::json od = nlohmann::json::parse(ones.structured);
    CHECK(od.at("results").at("colimit") == "Z");
}

TEST_CASE("diagram command on an example and on a file") {
    CliResult r = cli_run({"diagram", "--example", "cn", "--n", "1", "--ring", "z", "--horizon",
                           "5", "--dhigh", "4"});
    CHECK(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.structured);
    CHECK(doc.at("allChecksPassed") == true);

    // a zero complex from a file gives an all-zero table
    EquivariantComplex empty;
    save_complex_file(empty, "zero_complex.json");
    CliResult z = cli_run({"diagram", "--file", "zero_complex.json", "--ring", "q", "--dlow",
                           "0", "--dhigh", "2"});
    std::remove("zero_complex.json");
    CHECK(z.exit_code == 0);
    nlohmann::json zd = nlohmann::json::parse(z.structured);
    for (auto& row : zd.at("results")) {
        CHECK(row.at("chainFirstTop") == "0");
        CHECK(row.at("limitFirstBottom") == "0");
    }
}

TEST_CASE("flow and localize commands succeed with passing checks") {
    CHECK(cli_run({"flow", "heat", "--x0", "0.5"}).exit_code == 0);
    CHECK(cli_run({"flow", "heat", "--x0", "0"}).exit_code == 0);
    CHECK(cli_run({"flow", "count-c1"}).exit_code == 0);
    CHECK(cli_run({"localize", "--counterexample", "6"}).exit_code == 0);
    CHECK(cli_run({"no-such-command"}).exit_code == 2);
}
