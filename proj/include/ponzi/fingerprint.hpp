// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/money.hpp"
#include "ponzi/sol/ast.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ponzi {

struct SourceLoc {
    int line = 0;
    int column = 0;

    auto operator<=>(const SourceLoc&) const = default;
};

inline SourceLoc loc_of(const sol::Span& s) { return {s.line, s.column}; }

/// A boolean feature plus the location of the evidence that set it.
struct FeatureEvidence {
    bool present = false;
    SourceLoc loc{};

    explicit operator bool() const { return present; }
};

struct SendSite {
    SourceLoc loc;
    std::string receiver;  // source text of the receiver expression
    std::string snippet;   // source text of the whole call
    std::string function;  // enclosing function or modifier
    bool checked = false;  // return value feeds a condition
    bool in_loop = false;
};

struct ArithSite {
    SourceLoc loc;
    std::string op;  // "+", "*", "+=", "*="
    std::string snippet;
    std::string function;
};

struct IndexSite {
    SourceLoc loc;
    std::string snippet;
    std::string function;
};

/// Structural shape of one contract: storage layout and payout-loop patterns.
/// Extraction is total; missing evidence means false/none, never an error.
struct ContractFingerprint {
    std::string contract_name;

    // storage shape
    FeatureEvidence has_parent_link_mapping;
    FeatureEvidence has_investor_array;
    FeatureEvidence has_single_last_depositor;

    // payout shape
    FeatureEvidence payout_parent_walk;
    FeatureEvidence payout_fifo_multiplier;
    std::optional<Ratio> fifo_multiplier;
    FeatureEvidence payout_pro_rata;
    FeatureEvidence payout_single_forward;

    // entry conditions
    FeatureEvidence entry_fee_doubling;
    FeatureEvidence min_deposit_guard;
    std::optional<Wei> min_deposit_wei;
    FeatureEvidence owner_fee;
    std::optional<Ratio> owner_fee_fraction;

    // per-site evidence for the vulnerability detectors
    std::vector<SendSite> send_sites;
    std::vector<ArithSite> unguarded_arith_sites;
    std::vector<IndexSite> dynamic_index_sites;
};

ContractFingerprint extract_fingerprint(const sol::SourceUnit& unit,
                                        const sol::ContractDef& contract);

/// One record per .send/.transfer call in the function; checked is true when
/// the call is tested by if/require/while or assigned to a variable that some
/// condition in the same function reads.
std::vector<SendSite> checked_send_analysis(const sol::SourceUnit& unit,
                                            const sol::ContractDef& contract,
                                            const sol::FunctionDef& function);

/// Folds literals, parenthesized arithmetic and constant state-variable
/// initializers to an exact rational. Nullopt when not constant.
std::optional<Ratio> fold_constant(const sol::ContractDef& contract, const sol::Expr& e);

}  // namespace ponzi
