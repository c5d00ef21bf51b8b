// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/findings.hpp"

#include <algorithm>

namespace ponzi {

using namespace sol;

const char* swc_tag(Swc swc) {
    switch (swc) {
        case Swc::OverflowRisk: return "SWC-101";
        case Swc::UncheckedSend: return "SWC-104";
        case Swc::StateAnomaly: return "SWC-110";
    }
    return "?";
}

const char* swc_message(Swc swc) {
    switch (swc) {
        case Swc::OverflowRisk:
            return "Arithmetic on a value stored to persistent state or sent onward has no "
                   "overflow guard; the result can wrap.";
        case Swc::UncheckedSend:
            return "The return value of an external send/transfer is not checked; a failed "
                   "call continues execution silently. Wrap the call in require().";
        case Swc::StateAnomaly:
            return "Reachable assert or dynamic-array access without a dominating bounds "
                   "check may trigger an assertion violation (heuristic).";
    }
    return "?";
}

void sort_findings(std::vector<Finding>& findings) {
    std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        if (a.loc != b.loc) return a.loc < b.loc;
        return swc_tag(a.swc) < std::string_view(swc_tag(b.swc));
    });
}

std::vector<Finding> check_unchecked_send(const SourceUnit& unit, const ContractDef& contract) {
    ContractFingerprint fp = extract_fingerprint(unit, contract);
    std::vector<Finding> out;
    for (const auto& site : fp.send_sites) {
        if (site.checked) continue;
        out.push_back({Swc::UncheckedSend, contract.name, site.function, site.loc, site.snippet,
                       swc_message(Swc::UncheckedSend)});
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> check_overflow_risk(const SourceUnit& unit, const ContractDef& contract) {
    ContractFingerprint fp = extract_fingerprint(unit, contract);
    std::vector<Finding> out;
    for (const auto& site : fp.unguarded_arith_sites)
        out.push_back({Swc::OverflowRisk, contract.name, site.function, site.loc, site.snippet,
                       swc_message(Swc::OverflowRisk)});
    sort_findings(out);
    return out;
}

namespace {

void collect_asserts(const SourceUnit& unit, const ContractDef& contract,
                     const std::string& fnName, const Block& body, std::vector<Finding>& out) {
    walk_stmts(body, [&](const Stmt& s) {
        walk_exprs(s, [&](const Expr& e) {
            const auto* call = e.as<Call>();
            if (!call) return;
            const auto* id = call->callee->as<Ident>();
            if (!id || id->name != "assert") return;
            out.push_back({Swc::StateAnomaly, contract.name, fnName, loc_of(e.span),
                           std::string(span_text(unit, e.span)), swc_message(Swc::StateAnomaly)});
        });
    });
}

}  // namespace

std::vector<Finding> check_state_anomaly(const SourceUnit& unit, const ContractDef& contract) {
    std::vector<Finding> out;
    for (const auto& f : contract.functions)
        if (f.body) collect_asserts(unit, contract, f.display_name(), *f.body, out);
    for (const auto& m : contract.modifiers)
        collect_asserts(unit, contract, m.name, m.body, out);

    ContractFingerprint fp = extract_fingerprint(unit, contract);
    for (const auto& site : fp.dynamic_index_sites)
        out.push_back({Swc::StateAnomaly, contract.name, site.function, site.loc, site.snippet,
                       swc_message(Swc::StateAnomaly)});
    sort_findings(out);
    return out;
}

std::vector<Finding> scan_contract(const SourceUnit& unit) {
    std::vector<Finding> out;
    for (const auto& c : unit.contracts) {
        auto add = [&](std::vector<Finding> v) {
            out.insert(out.end(), std::make_move_iterator(v.begin()),
                       std::make_move_iterator(v.end()));
        };
        add(check_unchecked_send(unit, c));
        add(check_overflow_risk(unit, c));
        add(check_state_anomaly(unit, c));
    }
    sort_findings(out);
    return out;
}

}  // namespace ponzi
