// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/classifier.hpp"

#include <doctest.h>

#include "ponzi/sol/parser.hpp"
#include "test_util.hpp"

using namespace ponzi;

namespace {

Classification classify_fixture(const std::string& rel) {
    auto unit = sol::parse(test_util::read_fixture(rel));
    REQUIRE_FALSE(unit.contracts.empty());
    return classify(extract_fingerprint(unit, unit.contracts[0]));
}

Classification classify_source(const std::string& source) {
    auto unit = sol::parse(source);
    REQUIRE_FALSE(unit.contracts.empty());
    return classify(extract_fingerprint(unit, unit.contracts[0]));
}

}  // namespace

TEST_CASE("the four canonical fixtures classify to their four classes") {
    auto tree = classify_fixture("corpus/etheramid.sol");
    CHECK(tree.scheme == SchemeClass::Tree);
    CHECK(tree.confidence == Confidence::Definite);
    CHECK_FALSE(tree.rationale.empty());

    auto chain = classify_fixture("corpus/crystaldoubler.sol");
    CHECK(chain.scheme == SchemeClass::Chain);
    CHECK(chain.confidence == Confidence::Definite);

    auto waterfall = classify_fixture("corpus/ponzico.sol");
    CHECK(waterfall.scheme == SchemeClass::Waterfall);
    CHECK(waterfall.confidence == Confidence::Definite);

    auto transfer = classify_fixture("corpus/ponzischeme.sol");
    CHECK(transfer.scheme == SchemeClass::Transfer);
    CHECK(transfer.confidence == Confidence::Definite);
}

TEST_CASE("an all-false fingerprint is Unknown with empty rationale") {
    ContractFingerprint fp;
    auto cls = classify(fp);
    CHECK(cls.scheme == SchemeClass::Unknown);
    CHECK(cls.rationale.empty());
}

TEST_CASE("a benign token contract is Unknown") {
    auto cls = classify_fixture("corpus/erc20.sol");
    CHECK(cls.scheme == SchemeClass::Unknown);
}

TEST_CASE("classification is independent of declaration order") {
    // the handover fixture with members shuffled
    const char* reordered =
        "contract PonziScheme {\n"
        "    function increaseRound() private { round++; }\n"
        "    address public lastDepositor;\n"
        "    function() payable {\n"
        "        if(round == 1) { if(msg.value != startingAmount) { throw; } }\n"
        "        else { checkAmount(msg.value); lastDepositor.send(msg.value); }\n"
        "        lastDepositorAmount = msg.value;\n"
        "        lastDepositor = msg.sender;\n"
        "        nextAmount = msg.value * 2;\n"
        "        increaseRound();\n"
        "    }\n"
        "    uint public nextAmount;\n"
        "    uint public round;\n"
        "    function checkAmount(uint amount) private { if (amount != nextAmount) { throw; } }\n"
        "    uint public lastDepositorAmount;\n"
        "    uint public startingAmount;\n"
        "}\n";
    auto cls = classify_source(reordered);
    CHECK(cls.scheme == SchemeClass::Transfer);
    CHECK(cls.confidence == Confidence::Definite);
}

TEST_CASE("rationale names the deciding features with valid locations") {
    auto cls = classify_fixture("corpus/etheramid.sol");
    REQUIRE(cls.rationale.size() == 2);
    CHECK(cls.rationale[0].feature == "has_parent_link_mapping");
    CHECK(cls.rationale[1].feature == "payout_parent_walk");
    for (const auto& r : cls.rationale) {
        CHECK(r.loc.line > 0);
        CHECK(r.loc.column > 0);
    }
}

TEST_CASE("precedence and confidence degrade gracefully on mixed evidence") {
    ContractFingerprint fp;
    fp.has_parent_link_mapping = {true, {1, 1}};
    fp.payout_parent_walk = {true, {2, 1}};
    fp.has_investor_array = {true, {3, 1}};
    fp.payout_fifo_multiplier = {true, {4, 1}};
    fp.fifo_multiplier = Ratio(2);

    auto cls = classify(fp);
    CHECK(cls.scheme == SchemeClass::Tree);  // parent-walk evidence dominates
    CHECK(cls.confidence == Confidence::Heuristic);
}

TEST_CASE("transfer outranks chain when both somehow fire") {
    ContractFingerprint fp;
    fp.has_single_last_depositor = {true, {1, 1}};
    fp.payout_single_forward = {true, {2, 1}};
    fp.entry_fee_doubling = {true, {3, 1}};
    fp.has_investor_array = {true, {4, 1}};
    fp.payout_fifo_multiplier = {true, {5, 1}};

    auto cls = classify(fp);
    CHECK(cls.scheme == SchemeClass::Transfer);
    CHECK(cls.confidence == Confidence::Heuristic);
}
