// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/fingerprint.hpp"

#include <doctest.h>

#include "ponzi/sol/parser.hpp"
#include "test_util.hpp"

using namespace ponzi;

namespace {

struct Analyzed {
    sol::SourceUnit unit;
    ContractFingerprint fp;
};

Analyzed analyze(const std::string& source) {
    Analyzed a{sol::parse(source), {}};
    REQUIRE_FALSE(a.unit.contracts.empty());
    a.fp = extract_fingerprint(a.unit, a.unit.contracts[0]);
    return a;
}

Analyzed analyze_fixture(const std::string& rel) {
    return analyze(test_util::read_fixture(rel));
}

std::size_t unchecked_count(const ContractFingerprint& fp) {
    std::size_t n = 0;
    for (const auto& s : fp.send_sites)
        if (!s.checked) ++n;
    return n;
}

}  // namespace

TEST_CASE("pyramid fixture: parent-link mapping with a halving ancestor walk") {
    auto a = analyze_fixture("corpus/etheramid.sol");
    CHECK(a.fp.has_parent_link_mapping.present);
    CHECK(a.fp.payout_parent_walk.present);
    CHECK_FALSE(a.fp.payout_fifo_multiplier.present);
    CHECK_FALSE(a.fp.has_investor_array.present);
    CHECK_FALSE(a.fp.has_single_last_depositor.present);
    REQUIRE(a.fp.min_deposit_wei);
    CHECK(*a.fp.min_deposit_wei == Wei("100000000000000000"));  // 100 finney via initializer
    CHECK(a.fp.send_sites.size() == 3);
    CHECK(unchecked_count(a.fp) == 3);
    CHECK(a.fp.unguarded_arith_sites.size() == 2);
    CHECK(a.fp.dynamic_index_sites.empty());
}

TEST_CASE("doubler fixture: investor array paying exactly double above 500 finney") {
    auto a = analyze_fixture("corpus/crystaldoubler.sol");
    CHECK(a.fp.has_investor_array.present);
    CHECK(a.fp.payout_fifo_multiplier.present);
    REQUIRE(a.fp.fifo_multiplier);
    CHECK(*a.fp.fifo_multiplier == Ratio(2));
    CHECK(a.fp.min_deposit_guard.present);
    REQUIRE(a.fp.min_deposit_wei);
    CHECK(*a.fp.min_deposit_wei == Wei("500000000000000000"));
    CHECK_FALSE(a.fp.payout_parent_walk.present);
    CHECK_FALSE(a.fp.payout_pro_rata.present);
    CHECK(a.fp.send_sites.size() == 1);
    CHECK(unchecked_count(a.fp) == 1);
    CHECK(a.fp.dynamic_index_sites.size() == 5);  // every unbounded depositors[nr] access
}

TEST_CASE("ico fixture: pro-rata crediting with a half owner fee") {
    auto a = analyze_fixture("corpus/ponzico.sol");
    CHECK(a.fp.has_investor_array.present);  // address[] plus stake mapping
    CHECK(a.fp.payout_pro_rata.present);
    CHECK_FALSE(a.fp.payout_fifo_multiplier.present);
    CHECK(a.fp.owner_fee.present);
    REQUIRE(a.fp.owner_fee_fraction);
    CHECK(*a.fp.owner_fee_fraction == Ratio(1, 2));
    CHECK_FALSE(a.fp.min_deposit_guard.present);
    CHECK(a.fp.send_sites.size() == 1);
    CHECK(unchecked_count(a.fp) == 0);  // the withdraw send is tested
    CHECK(a.fp.dynamic_index_sites.empty());  // i is bounded by investors.length
}

TEST_CASE("handover fixture: lone depositor slot, forward send, doubling fee") {
    auto a = analyze_fixture("corpus/ponzischeme.sol");
    CHECK(a.fp.has_single_last_depositor.present);
    CHECK(a.fp.payout_single_forward.present);
    CHECK(a.fp.entry_fee_doubling.present);
    CHECK_FALSE(a.fp.min_deposit_guard.present);  // equality test, not a threshold
    CHECK(a.fp.send_sites.size() == 1);
    CHECK(unchecked_count(a.fp) == 1);
}

TEST_CASE("empty contract yields an all-false fingerprint") {
    auto a = analyze("contract A { }");
    CHECK_FALSE(a.fp.has_parent_link_mapping.present);
    CHECK_FALSE(a.fp.has_investor_array.present);
    CHECK_FALSE(a.fp.has_single_last_depositor.present);
    CHECK_FALSE(a.fp.payout_parent_walk.present);
    CHECK_FALSE(a.fp.payout_fifo_multiplier.present);
    CHECK_FALSE(a.fp.payout_pro_rata.present);
    CHECK_FALSE(a.fp.payout_single_forward.present);
    CHECK_FALSE(a.fp.entry_fee_doubling.present);
    CHECK_FALSE(a.fp.min_deposit_guard.present);
    CHECK_FALSE(a.fp.owner_fee.present);
    CHECK(a.fp.send_sites.empty());
    CHECK(a.fp.unguarded_arith_sites.empty());
    CHECK(a.fp.dynamic_index_sites.empty());
}

TEST_CASE("checked-send analysis: bare, condition-wrapped and assigned-then-tested") {
    SUBCASE("bare statement is unchecked") {
        auto a = analyze("contract T { function f() { msg.sender.send(msg.value); } }");
        REQUIRE(a.fp.send_sites.size() == 1);
        CHECK_FALSE(a.fp.send_sites[0].checked);
        CHECK(a.fp.send_sites[0].receiver == "msg.sender");
    }
    SUBCASE("if-condition send is checked") {
        auto a = analyze("contract T { function f(address a, uint v) { if (!a.send(v)) throw; } }");
        REQUIRE(a.fp.send_sites.size() == 1);
        CHECK(a.fp.send_sites[0].checked);
    }
    SUBCASE("require-wrapped send is checked") {
        auto a = analyze("contract T { function f(address a, uint v) { require(a.send(v)); } }");
        REQUIRE(a.fp.send_sites.size() == 1);
        CHECK(a.fp.send_sites[0].checked);
    }
    SUBCASE("assigned and later tested is checked") {
        auto a = analyze(
            "contract T { function f(address a, uint v) {"
            " bool ok = a.send(v);"
            " if (!ok) throw;"
            " } }");
        REQUIRE(a.fp.send_sites.size() == 1);
        CHECK(a.fp.send_sites[0].checked);
    }
    SUBCASE("assigned and never tested is unchecked") {
        auto a = analyze(
            "contract T { function f(address a, uint v) { bool ok = a.send(v); } }");
        REQUIRE(a.fp.send_sites.size() == 1);
        CHECK_FALSE(a.fp.send_sites[0].checked);
    }
    SUBCASE("two-argument member transfer is a token call, not a payment site") {
        auto a = analyze(
            "contract T { function f(address tok, address to, uint v) {"
            " tok.transfer(to, v);"
            " } }");
        CHECK(a.fp.send_sites.empty());
    }
}

TEST_CASE("checked_send_analysis exposes the per-function view") {
    auto source = test_util::read_fixture("corpus/ponzischeme.sol");
    auto unit = sol::parse(source);
    const auto& c = unit.contracts[0];
    for (const auto& f : c.functions) {
        auto sites = checked_send_analysis(unit, c, f);
        if (f.is_fallback) {
            REQUIRE(sites.size() == 1);
            CHECK(sites[0].receiver == "lastDepositor");
            CHECK_FALSE(sites[0].checked);
        } else {
            CHECK(sites.empty());
        }
    }
}

TEST_CASE("send sites cover every textual .send( and .transfer( occurrence") {
    const char* files[] = {"corpus/etheramid.sol",    "corpus/crystaldoubler.sol",
                           "corpus/ponzico.sol",      "corpus/ponzischeme.sol",
                           "corpus/tree_variant.sol", "corpus/chain_variant.sol",
                           "corpus/fomo3d.sol",       "corpus/erc20.sol"};
    for (const char* file : files) {
        CAPTURE(file);
        auto source = test_util::read_fixture(file);
        auto stripped = test_util::strip_comments(source);
        std::size_t textual = test_util::count_occurrences(stripped, ".send(") +
                              test_util::count_occurrences(stripped, ".transfer(");
        auto unit = sol::parse(source);
        std::size_t found = 0;
        for (const auto& c : unit.contracts) found += extract_fingerprint(unit, c).send_sites.size();
        CHECK(found == textual);
    }
}

TEST_CASE("adding unrelated functions never flips a true feature to false") {
    auto source = test_util::read_fixture("corpus/etheramid.sol");
    auto before = analyze(source).fp;

    auto closing = source.rfind('}');
    REQUIRE(closing != std::string::npos);
    std::string extended = source.substr(0, closing) +
                           "    function unrelatedPing() public { }\n"
                           "    function unrelatedEcho(uint v) public returns (uint) { return v; }\n" +
                           source.substr(closing);
    auto after = analyze(extended).fp;

    CHECK(after.has_parent_link_mapping.present == before.has_parent_link_mapping.present);
    CHECK(after.payout_parent_walk.present == before.payout_parent_walk.present);
    CHECK(after.min_deposit_guard.present == before.min_deposit_guard.present);
    CHECK(after.send_sites.size() == before.send_sites.size());
}

TEST_CASE("exactly one payout shape fires per canonical fixture") {
    const char* files[] = {"corpus/etheramid.sol", "corpus/crystaldoubler.sol",
                           "corpus/ponzico.sol", "corpus/ponzischeme.sol"};
    for (const char* file : files) {
        CAPTURE(file);
        auto a = analyze_fixture(file);
        int shapes = int(a.fp.payout_parent_walk.present) +
                     int(a.fp.payout_fifo_multiplier.present) +
                     int(a.fp.payout_pro_rata.present) +
                     int(a.fp.payout_single_forward.present);
        CHECK(shapes == 1);
    }
}

TEST_CASE("variant fixtures extract ratio and threshold from their own constants") {
    auto chain = analyze_fixture("corpus/chain_variant.sol");
    REQUIRE(chain.fp.fifo_multiplier);
    CHECK(*chain.fp.fifo_multiplier == Ratio(3, 2));
    REQUIRE(chain.fp.min_deposit_wei);
    CHECK(*chain.fp.min_deposit_wei == Wei("1000000000000000000"));
    CHECK(chain.fp.dynamic_index_sites.empty());  // head < queue.length bounds every access

    auto tree = analyze_fixture("corpus/tree_variant.sol");
    CHECK(tree.fp.payout_parent_walk.present);  // division by 3 still counts as a shrinking walk
}

TEST_CASE("evidence locations point into the source") {
    auto a = analyze_fixture("corpus/crystaldoubler.sol");
    REQUIRE(a.fp.payout_fifo_multiplier.present);
    CHECK(a.fp.payout_fifo_multiplier.loc.line > 0);
    CHECK(a.fp.payout_fifo_multiplier.loc.column > 0);
    for (const auto& site : a.fp.send_sites) {
        CHECK(site.loc.line > 0);
        CHECK(site.loc.column > 0);
    }
}
