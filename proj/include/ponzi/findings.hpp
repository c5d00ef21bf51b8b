// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/fingerprint.hpp"
#include "ponzi/sol/ast.hpp"

#include <string>
#include <vector>

namespace ponzi {

enum class Swc {
    OverflowRisk,    // SWC-101: unguarded arithmetic on persistent state
    UncheckedSend,   // SWC-104: unchecked external call return value
    StateAnomaly,    // SWC-110: reachable assert / unguarded dynamic index
};

const char* swc_tag(Swc swc);      // "SWC-101" etc.
const char* swc_message(Swc swc);  // fixed explanatory template

struct Finding {
    Swc swc;
    std::string contract;
    std::string function;  // "<fallback>" for the unnamed function
    SourceLoc loc;
    std::string snippet;
    std::string message;
};

std::vector<Finding> check_unchecked_send(const sol::SourceUnit& unit,
                                          const sol::ContractDef& contract);
std::vector<Finding> check_overflow_risk(const sol::SourceUnit& unit,
                                         const sol::ContractDef& contract);
std::vector<Finding> check_state_anomaly(const sol::SourceUnit& unit,
                                         const sol::ContractDef& contract);

/// All checks over all contracts in the file, ordered by (line, column, tag).
std::vector<Finding> scan_contract(const sol::SourceUnit& unit);

void sort_findings(std::vector<Finding>& findings);

}  // namespace ponzi
