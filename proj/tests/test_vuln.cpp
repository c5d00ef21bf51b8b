// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/findings.hpp"

#include <doctest.h>

#include "ponzi/sol/parser.hpp"
#include "test_util.hpp"

using namespace ponzi;

namespace {

sol::SourceUnit parse_fixture(const std::string& rel) {
    return sol::parse(test_util::read_fixture(rel));
}

std::size_t count_swc(const std::vector<Finding>& findings, Swc swc) {
    std::size_t n = 0;
    for (const auto& f : findings)
        if (f.swc == swc) ++n;
    return n;
}

}  // namespace

TEST_CASE("pyramid fixture has exactly three unchecked sends") {
    auto unit = parse_fixture("corpus/etheramid.sol");
    auto findings = check_unchecked_send(unit, unit.contracts[0]);
    REQUIRE(findings.size() == 3);
    CHECK(findings[0].snippet == "msg.sender.send(msg.value)");
    CHECK(findings[1].snippet == "next.send(toSend)");
    CHECK(findings[2].snippet == "next.send(rest)");
    for (const auto& f : findings) {
        CHECK(f.swc == Swc::UncheckedSend);
        CHECK(f.contract == "Etheramid");
        CHECK(f.function == "enter");
    }
}

TEST_CASE("handover fixture has exactly one unchecked send, in the fallback") {
    auto unit = parse_fixture("corpus/ponzischeme.sol");
    auto findings = check_unchecked_send(unit, unit.contracts[0]);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].snippet == "lastDepositor.send(msg.value)");
    CHECK(findings[0].function == "<fallback>");
}

TEST_CASE("ico fixture has zero unchecked sends") {
    auto unit = parse_fixture("corpus/ponzico.sol");
    CHECK(check_unchecked_send(unit, unit.contracts[0]).empty());
    CHECK(count_swc(scan_contract(unit), Swc::UncheckedSend) == 0);
}

TEST_CASE("a condition-tested send produces no finding") {
    auto unit = sol::parse("contract T { function f(address a, uint v) { if (!a.send(v)) throw; } }");
    CHECK(check_unchecked_send(unit, unit.contracts[0]).empty());
}

TEST_CASE("overflow risk: state-bound arithmetic flags, constants do not") {
    SUBCASE("doubler fixture flags its balance update") {
        auto unit = parse_fixture("corpus/crystaldoubler.sol");
        auto findings = check_overflow_risk(unit, unit.contracts[0]);
        CHECK(findings.size() == 6);
        bool sawBalance = false;
        for (const auto& f : findings)
            if (f.snippet.find("Balance += Amount") != std::string::npos) sawBalance = true;
        CHECK(sawBalance);
    }
    SUBCASE("literal-only expressions never flag") {
        auto unit = sol::parse("contract T { uint s; function f() { uint x = 2 + 3; s = x; } }");
        CHECK(check_overflow_risk(unit, unit.contracts[0]).empty());
    }
    SUBCASE("doubling the next entry fee flags") {
        auto unit = parse_fixture("corpus/ponzischeme.sol");
        auto findings = check_overflow_risk(unit, unit.contracts[0]);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].snippet.find("nextAmount = msg.value * 2") != std::string::npos);
    }
    SUBCASE("a guarded update does not flag") {
        auto unit = sol::parse(
            "contract T { mapping(address => uint) b;"
            " function f(address to, uint v) { require(b[to] + v >= b[to]); b[to] += v; } }");
        CHECK(check_overflow_risk(unit, unit.contracts[0]).empty());
    }
}

TEST_CASE("state anomaly: unbounded dynamic indexing and explicit asserts") {
    SUBCASE("the doubler queue index is unbounded by its length") {
        auto unit = parse_fixture("corpus/crystaldoubler.sol");
        auto findings = check_state_anomaly(unit, unit.contracts[0]);
        CHECK(findings.size() == 5);
        for (const auto& f : findings)
            CHECK(f.snippet.find("depositors[nr]") != std::string::npos);
    }
    SUBCASE("a length-guarded index is clean") {
        auto unit = sol::parse(
            "contract T { uint[] a;"
            " function f(uint i) { require(i < a.length); a[i] = 1; } }");
        CHECK(check_state_anomaly(unit, unit.contracts[0]).empty());
    }
    SUBCASE("an explicit assert is always reported") {
        auto unit = sol::parse("contract T { uint total; function f() { assert(total > 0); } }");
        auto findings = check_state_anomaly(unit, unit.contracts[0]);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].snippet == "assert(total > 0)");
        CHECK(findings[0].message.find("heuristic") != std::string::npos);
    }
}

TEST_CASE("scan_contract composes all checks deterministically, sorted by position") {
    auto unit = parse_fixture("corpus/crystaldoubler.sol");
    auto first = scan_contract(unit);
    auto second = scan_contract(unit);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].snippet == second[i].snippet);
        CHECK(first[i].loc == second[i].loc);
        CHECK(first[i].swc == second[i].swc);
    }
    for (std::size_t i = 1; i < first.size(); ++i) {
        bool ordered = first[i - 1].loc < first[i].loc ||
                       (first[i - 1].loc == first[i].loc &&
                        std::string_view(swc_tag(first[i - 1].swc)) <= swc_tag(first[i].swc));
        CHECK(ordered);
    }
}

TEST_CASE("handover fixture scan includes both an unchecked send and an overflow risk") {
    auto unit = parse_fixture("corpus/ponzischeme.sol");
    auto findings = scan_contract(unit);
    CHECK(count_swc(findings, Swc::UncheckedSend) == 1);
    CHECK(count_swc(findings, Swc::OverflowRisk) >= 1);
}

TEST_CASE("empty and benign contracts scan clean") {
    CHECK(scan_contract(sol::parse("contract A { }")).empty());
    CHECK(scan_contract(parse_fixture("corpus/erc20.sol")).empty());
    CHECK(scan_contract(parse_fixture("corpus/fomo3d.sol")).empty());
}

TEST_CASE("every finding snippet carries the syntax it claims to flag") {
    const char* files[] = {"corpus/etheramid.sol", "corpus/crystaldoubler.sol",
                           "corpus/ponzico.sol",   "corpus/ponzischeme.sol",
                           "corpus/tree_variant.sol", "corpus/chain_variant.sol"};
    for (const char* file : files) {
        CAPTURE(file);
        auto unit = parse_fixture(file);
        for (const auto& f : scan_contract(unit)) {
            CAPTURE(f.snippet);
            switch (f.swc) {
                case Swc::UncheckedSend:
                    CHECK((f.snippet.find(".send(") != std::string::npos ||
                           f.snippet.find(".transfer(") != std::string::npos));
                    break;
                case Swc::OverflowRisk:
                    CHECK((f.snippet.find('+') != std::string::npos ||
                           f.snippet.find('*') != std::string::npos));
                    break;
                case Swc::StateAnomaly:
                    CHECK((f.snippet.find("assert") != std::string::npos ||
                           f.snippet.find('[') != std::string::npos));
                    break;
            }
        }
    }
}

TEST_CASE("golden per-fixture finding counts") {
    struct Expected {
        const char* file;
        std::size_t n101, n104, n110;
    };
    const Expected table[] = {
        {"corpus/etheramid.sol", 2, 3, 0},
        {"corpus/crystaldoubler.sol", 6, 1, 5},
        {"corpus/ponzico.sol", 4, 0, 0},
        {"corpus/ponzischeme.sol", 1, 1, 0},
        {"corpus/tree_variant.sol", 2, 3, 0},
        {"corpus/chain_variant.sol", 2, 1, 0},
        {"corpus/erc20.sol", 0, 0, 0},
        {"corpus/fomo3d.sol", 0, 0, 0},
    };
    for (const auto& expected : table) {
        CAPTURE(expected.file);
        auto findings = scan_contract(parse_fixture(expected.file));
        CHECK(count_swc(findings, Swc::OverflowRisk) == expected.n101);
        CHECK(count_swc(findings, Swc::UncheckedSend) == expected.n104);
        CHECK(count_swc(findings, Swc::StateAnomaly) == expected.n110);
    }
}
