// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/classifier.hpp"

namespace ponzi {

const char* scheme_class_name(SchemeClass c) {
    switch (c) {
        case SchemeClass::Tree: return "Tree";
        case SchemeClass::Chain: return "Chain";
        case SchemeClass::Waterfall: return "Waterfall";
        case SchemeClass::Transfer: return "Transfer";
        case SchemeClass::Unknown: return "Unknown";
    }
    return "?";
}

Classification classify(const ContractFingerprint& fp) {
    const bool treeRule = fp.has_parent_link_mapping && fp.payout_parent_walk;
    const bool transferRule = fp.has_single_last_depositor && fp.payout_single_forward &&
                              fp.entry_fee_doubling;
    const bool chainRule = fp.has_investor_array && fp.payout_fifo_multiplier;
    const bool waterfallRule = fp.has_investor_array && fp.payout_pro_rata;

    const int firing = int(treeRule) + int(transferRule) + int(chainRule) + int(waterfallRule);
    const int storageShapes = int(fp.has_parent_link_mapping.present) +
                              int(fp.has_investor_array.present) +
                              int(fp.has_single_last_depositor.present);

    Classification out;
    out.confidence = (firing > 1 || storageShapes > 1) ? Confidence::Heuristic
                                                       : Confidence::Definite;

    auto add = [&](const char* name, const FeatureEvidence& ev) {
        out.rationale.push_back({name, ev.loc});
    };

    if (treeRule) {
        out.scheme = SchemeClass::Tree;
        add("has_parent_link_mapping", fp.has_parent_link_mapping);
        add("payout_parent_walk", fp.payout_parent_walk);
    } else if (transferRule) {
        out.scheme = SchemeClass::Transfer;
        add("has_single_last_depositor", fp.has_single_last_depositor);
        add("payout_single_forward", fp.payout_single_forward);
        add("entry_fee_doubling", fp.entry_fee_doubling);
    } else if (chainRule) {
        out.scheme = SchemeClass::Chain;
        add("has_investor_array", fp.has_investor_array);
        add("payout_fifo_multiplier", fp.payout_fifo_multiplier);
    } else if (waterfallRule) {
        out.scheme = SchemeClass::Waterfall;
        add("has_investor_array", fp.has_investor_array);
        add("payout_pro_rata", fp.payout_pro_rata);
    } else {
        out.scheme = SchemeClass::Unknown;
        out.confidence = Confidence::Definite;
    }
    return out;
}

}  // namespace ponzi
