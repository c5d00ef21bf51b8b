// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/sol/parser.hpp"

#include <doctest.h>

#include "ponzi/fingerprint.hpp"
#include "test_util.hpp"

using namespace ponzi;
using namespace ponzi::sol;

namespace {

SourceUnit parse_fixture(const std::string& rel) {
    return parse(test_util::read_fixture(rel));
}

void check_spans_nest(const Expr& e) {
    for_each_child(e, [&](const Expr& child) {
        CHECK(e.span.contains(child.span));
        check_spans_nest(child);
    });
}

void check_spans_nest(const Stmt& s) {
    for_each_child(
        s,
        [&](const Stmt& child) {
            CHECK(s.span.contains(child.span));
            check_spans_nest(child);
        },
        [&](const Expr& child) {
            CHECK(s.span.contains(child.span));
            check_spans_nest(child);
        });
}

}  // namespace

TEST_CASE("minimal contract parses to one empty contract") {
    auto unit = parse("contract A { }");
    REQUIRE(unit.contracts.size() == 1);
    CHECK(unit.contracts[0].name == "A");
    CHECK(unit.contracts[0].functions.empty());
    CHECK(unit.contracts[0].state_vars.empty());
}

TEST_CASE("all paper-shaped fixtures parse with zero errors") {
    const char* files[] = {"corpus/etheramid.sol", "corpus/crystaldoubler.sol",
                           "corpus/ponzico.sol",   "corpus/ponzischeme.sol",
                           "corpus/fomo3d.sol"};
    for (const char* file : files) {
        CAPTURE(file);
        CHECK_NOTHROW(parse_fixture(file));
    }
}

TEST_CASE("doubler fixture: enter holds one if with a nested while") {
    auto unit = parse_fixture("corpus/crystaldoubler.sol");
    REQUIRE(unit.contracts.size() == 1);
    const FunctionDef* enter = unit.contracts[0].function("enter");
    REQUIRE(enter);
    REQUIRE(enter->body);
    REQUIRE(enter->body->stmts.size() == 1);
    const auto* ifStmt = enter->body->stmts[0]->as<IfStmt>();
    REQUIRE(ifStmt);
    std::size_t whiles = 0;
    walk_stmts(*ifStmt->then_branch, [&](const Stmt& s) {
        if (s.is<WhileStmt>()) ++whiles;
    });
    CHECK(whiles == 1);
}

TEST_CASE("handover fixture: unnamed payable fallback starts with if(round == 1)") {
    auto unit = parse_fixture("corpus/ponzischeme.sol");
    const FunctionDef* fallback = nullptr;
    for (const auto& f : unit.contracts[0].functions)
        if (f.is_fallback) fallback = &f;
    REQUIRE(fallback);
    CHECK(fallback->payable);
    REQUIRE(fallback->body);
    REQUIRE_FALSE(fallback->body->stmts.empty());
    const auto* ifStmt = fallback->body->stmts[0]->as<IfStmt>();
    REQUIRE(ifStmt);
    CHECK(dump(*ifStmt->cond) == "(== round (num 1))");
}

TEST_CASE("span_text returns exact source slices") {
    auto unit = parse_fixture("corpus/etheramid.sol");
    CHECK(span_text(unit, unit.span) == *unit.source);

    const FunctionDef* enter = unit.contracts[0].function("enter");
    REQUIRE(enter);
    bool sawRefund = false;
    walk_stmts(*enter->body, [&](const Stmt& s) {
        walk_exprs(s, [&](const Expr& e) {
            if (std::string(span_text(unit, e.span)) == "msg.sender.send(msg.value)")
                sawRefund = e.is<Call>() ? true : sawRefund;
        });
    });
    CHECK(sawRefund);

    auto unit2 = parse_fixture("corpus/ponzischeme.sol");
    bool sawDoubling = false;
    for (const auto& f : unit2.contracts[0].functions) {
        if (!f.body) continue;
        walk_stmts(*f.body, [&](const Stmt& s) {
            walk_exprs(s, [&](const Expr& e) {
                if (e.is<Assign>() &&
                    std::string(span_text(unit2, e.span)) == "nextAmount = msg.value * 2")
                    sawDoubling = true;
            });
        });
    }
    CHECK(sawDoubling);
}

TEST_CASE("spans nest properly across all parsed fixtures") {
    const char* files[] = {"corpus/etheramid.sol",    "corpus/crystaldoubler.sol",
                           "corpus/ponzico.sol",      "corpus/ponzischeme.sol",
                           "corpus/fomo3d.sol",       "corpus/erc20.sol",
                           "corpus/tree_variant.sol", "corpus/chain_variant.sol",
                           "corpus/empty_contract.sol"};
    for (const char* file : files) {
        CAPTURE(file);
        auto unit = parse_fixture(file);
        for (const auto& c : unit.contracts) {
            CHECK(unit.span.contains(c.span));
            for (const auto& f : c.functions) {
                CHECK(c.span.contains(f.span));
                if (!f.body) continue;
                for (const auto& st : f.body->stmts) {
                    CHECK(f.span.contains(st->span));
                    check_spans_nest(*st);
                }
            }
        }
    }
}

TEST_CASE("identical input yields structurally identical trees") {
    auto source = test_util::read_fixture("corpus/ponzico.sol");
    CHECK(dump(parse(source)) == dump(parse(source)));
}

TEST_CASE("currency literals normalize to wei") {
    auto unit = parse("contract C { uint x = 500 finney; uint y = 1 ether; uint z = 3 szabo; }");
    const auto& c = unit.contracts[0];
    auto folded = [&](const char* name) { return fold_constant(c, *c.state_var(name)->init); };
    CHECK(*folded("x") == Ratio(Wei("500000000000000000")));
    CHECK(*folded("y") == Ratio(Wei("1000000000000000000")));
    CHECK(*folded("z") == Ratio(Wei("3000000000000")));
}

TEST_CASE("unsupported but balanced statements degrade to opaque statements") {
    auto unit = parse(
        "contract C {\n"
        "    uint public x;\n"
        "    function f() {\n"
        "        x = 1;\n"
        "        try weird() returns (uint v) { x = v; } catch { x = 0; }\n"
        "        x = 2;\n"
        "    }\n"
        "}\n");
    const FunctionDef* f = unit.contracts[0].function("f");
    REQUIRE(f);
    REQUIRE(f->body->stmts.size() == 3);
    CHECK(f->body->stmts[0]->is<ExprStmt>());
    const auto* opaque = f->body->stmts[1]->as<OpaqueStmt>();
    REQUIRE(opaque);
    CHECK(opaque->text.find("catch") != std::string::npos);
    CHECK(f->body->stmts[2]->is<ExprStmt>());
}

TEST_CASE("assembly blocks are preserved verbatim as opaque text") {
    auto unit = parse_fixture("corpus/fomo3d.sol");
    bool sawAssembly = false;
    for (const auto& m : unit.contracts[0].modifiers) {
        for (const auto& st : m.body.stmts) {
            if (const auto* as = st->as<AssemblyStmt>()) {
                sawAssembly = true;
                CHECK(as->text == "{_codeLength := extcodesize(_addr)}");
            }
        }
    }
    CHECK(sawAssembly);
}

TEST_CASE("structurally broken files raise parse errors") {
    CHECK_THROWS_AS(parse(test_util::read_fixture("corpus/broken.sol")), ParseError);
    CHECK_THROWS_AS(parse("contract A {"), ParseError);
    CHECK_THROWS_AS(parse("what is this"), ParseError);
}

TEST_CASE("record arrays, nested mappings and inheritance headers parse") {
    auto unit = parse(
        "contract Base { }\n"
        "contract C is Base {\n"
        "    struct P { address who; uint amount; }\n"
        "    P[] public people;\n"
        "    mapping (address => mapping (address => uint)) allowed;\n"
        "    uint[3] fixedSlots;\n"
        "}\n");
    const auto& c = unit.contracts[1];
    REQUIRE(c.bases.size() == 1);
    CHECK(c.bases[0] == "Base");
    REQUIRE(c.records.size() == 1);
    CHECK(c.records[0].fields.size() == 2);
    REQUIRE(c.state_vars.size() == 3);
    CHECK(c.state_vars[0].type.is_dynamic_array());
    CHECK(c.state_vars[1].type.kind == TypeName::Kind::Mapping);
    CHECK(c.state_vars[1].type.value->kind == TypeName::Kind::Mapping);
    CHECK_FALSE(c.state_vars[2].type.is_dynamic_array());
}

TEST_CASE("pragmas are recorded verbatim and otherwise ignored") {
    auto unit = parse_fixture("corpus/etheramid.sol");
    REQUIRE(unit.pragmas.size() == 1);
    CHECK(unit.pragmas[0] == "pragma solidity ^0.4.2;");
}
