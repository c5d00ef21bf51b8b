// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/report.hpp"

#include <doctest.h>

#include "test_util.hpp"

using namespace ponzi;

namespace {

FileResult analyze_fixture(const std::string& rel) {
    return analyze_file(rel, test_util::read_fixture(rel));
}

std::vector<FileResult> canonical_plus_benign() {
    return {analyze_fixture("corpus/etheramid.sol"), analyze_fixture("corpus/crystaldoubler.sol"),
            analyze_fixture("corpus/ponzico.sol"), analyze_fixture("corpus/ponzischeme.sol"),
            analyze_fixture("corpus/erc20.sol")};
}

}  // namespace

TEST_CASE("analyze_file: pyramid fixture is Tree with three unchecked-send findings") {
    auto r = analyze_fixture("corpus/etheramid.sol");
    CHECK(r.parsed);
    REQUIRE(r.classification);
    CHECK(r.classification->scheme == SchemeClass::Tree);
    std::size_t n104 = 0;
    for (const auto& f : r.findings)
        if (f.swc == Swc::UncheckedSend) ++n104;
    CHECK(n104 >= 3);
    CHECK(r.characteristics.has_min_deposit_guard);
}

TEST_CASE("analyze_file: broken input carries the failure marker and nothing else") {
    auto r = analyze_fixture("corpus/broken.sol");
    CHECK_FALSE(r.parsed);
    CHECK_FALSE(r.classification.has_value());
    CHECK(r.findings.empty());
    CHECK(r.content_hash.size() == 64);
}

TEST_CASE("analyze_file: benign token is Unknown with zero unchecked sends") {
    auto r = analyze_fixture("corpus/erc20.sol");
    CHECK(r.parsed);
    CHECK(r.classification->scheme == SchemeClass::Unknown);
    for (const auto& f : r.findings) CHECK(f.swc != Swc::UncheckedSend);
}

TEST_CASE("characteristics mirror the fingerprint") {
    auto chain = analyze_fixture("corpus/crystaldoubler.sol");
    CHECK(chain.characteristics.has_min_deposit_guard);
    REQUIRE(chain.characteristics.min_deposit_wei);
    CHECK(*chain.characteristics.min_deposit_wei == Wei("500000000000000000"));
    CHECK(chain.characteristics.payout_order_bias == PayoutOrderBias::EarlyFirst);

    auto waterfall = analyze_fixture("corpus/ponzico.sol");
    CHECK(waterfall.characteristics.has_owner_fee);
    CHECK(waterfall.characteristics.payout_order_bias == PayoutOrderBias::InitiatorFirst);

    auto benign = analyze_fixture("corpus/erc20.sol");
    CHECK(benign.characteristics.payout_order_bias == PayoutOrderBias::None);
}

TEST_CASE("aggregate: canonical four plus benign count one per class") {
    auto summary = aggregate(canonical_plus_benign());
    CHECK(summary.total_files == 5);
    CHECK(summary.parsed_files == 5);
    CHECK(summary.counts_by_class.at(SchemeClass::Tree) == 1);
    CHECK(summary.counts_by_class.at(SchemeClass::Chain) == 1);
    CHECK(summary.counts_by_class.at(SchemeClass::Waterfall) == 1);
    CHECK(summary.counts_by_class.at(SchemeClass::Transfer) == 1);
    CHECK(summary.counts_by_class.at(SchemeClass::Unknown) == 1);
}

TEST_CASE("aggregate: empty input gives the all-zero summary") {
    auto summary = aggregate({});
    CHECK(summary.total_files == 0);
    CHECK(summary.parsed_files == 0);
    for (const auto& [cls, n] : summary.counts_by_class) CHECK(n == 0);
    for (const auto& [tag, n] : summary.counts_by_swc) CHECK(n == 0);
    CHECK(summary.min_deposit_den == 0);
}

TEST_CASE("aggregate: class counts sum to parsed files, tallies are additive") {
    std::vector<FileResult> all;
    const char* files[] = {"corpus/etheramid.sol",      "corpus/crystaldoubler.sol",
                           "corpus/ponzico.sol",        "corpus/ponzischeme.sol",
                           "corpus/fomo3d.sol",         "corpus/erc20.sol",
                           "corpus/tree_variant.sol",   "corpus/chain_variant.sol",
                           "corpus/empty_contract.sol", "corpus/broken.sol"};
    for (const char* f : files) all.push_back(analyze_fixture(f));

    auto summary = aggregate(all);
    std::size_t classTotal = 0;
    for (const auto& [cls, n] : summary.counts_by_class) classTotal += n;
    CHECK(classTotal == summary.parsed_files);
    CHECK(summary.total_files == 10);
    CHECK(summary.parsed_files == 9);

    std::size_t findingTotal = 0;
    for (const auto& r : all) findingTotal += r.findings.size();
    std::size_t swcTotal = 0;
    for (const auto& [tag, n] : summary.counts_by_swc) swcTotal += n;
    CHECK(swcTotal == findingTotal);

    // pointwise additivity over a split
    std::vector<FileResult> left(all.begin(), all.begin() + 4);
    std::vector<FileResult> right(all.begin() + 4, all.end());
    auto a = aggregate(left), b = aggregate(right);
    for (const auto& [tag, n] : summary.counts_by_swc)
        CHECK(n == a.counts_by_swc.at(tag) + b.counts_by_swc.at(tag));
    for (const auto& [cls, n] : summary.counts_by_class)
        CHECK(n == a.counts_by_class.at(cls) + b.counts_by_class.at(cls));
}

TEST_CASE("min-deposit prevalence counts classified schemes only") {
    auto summary = aggregate(canonical_plus_benign());
    // four classified files; the ico and the handover game take no minimum
    CHECK(summary.min_deposit_den == 4);
    CHECK(summary.min_deposit_num == 2);
}

TEST_CASE("emission is deterministic in all three formats") {
    auto summary = aggregate(canonical_plus_benign());
    for (auto format : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Text}) {
        CHECK(emit(summary, format) == emit(summary, format));
        CHECK_FALSE(emit(summary, format).empty());
    }
}

TEST_CASE("csv renders class counts as simple rows") {
    auto summary = aggregate({analyze_fixture("corpus/etheramid.sol")});
    auto csv = emit(summary, ReportFormat::Csv);
    CHECK(csv.find("Tree,1\n") != std::string::npos);
    CHECK(csv.find("Chain,0\n") != std::string::npos);
    CHECK(csv.find("metric,value\n") == 0);
    CHECK(csv.find("path,class,confidence") != std::string::npos);
}

TEST_CASE("plain text ends with one block per file, headed by its path") {
    auto summary = aggregate(canonical_plus_benign());
    auto text = emit(summary, ReportFormat::Text);
    for (const auto& r : summary.per_file)
        CHECK(text.find("==== " + r.path + " ====") != std::string::npos);
    auto lastBlock = text.rfind("==== ");
    CHECK(text.find("==== corpus/erc20.sol ====") == lastBlock);  // manifest order preserved
}

TEST_CASE("unknown formats are refused") {
    CHECK_THROWS_AS(report_format_from_name("xml"), ReportError);
}

TEST_CASE("json reports round-trip through the parser unchanged") {
    std::vector<FileResult> all = canonical_plus_benign();
    all.push_back(analyze_fixture("corpus/broken.sol"));
    auto summary = aggregate(all);
    auto json = emit(summary, ReportFormat::Json);
    auto reparsed = summary_from_json(json);
    CHECK(emit(reparsed, ReportFormat::Json) == json);
    CHECK(emit(reparsed, ReportFormat::Csv) == emit(summary, ReportFormat::Csv));
    CHECK(emit(reparsed, ReportFormat::Text) == emit(summary, ReportFormat::Text));
    CHECK_THROWS_AS(summary_from_json("{"), ReportError);
    CHECK_THROWS_AS(summary_from_json("{}"), ReportError);
}
