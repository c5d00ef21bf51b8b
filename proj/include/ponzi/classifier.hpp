// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/fingerprint.hpp"

#include <string>
#include <vector>

namespace ponzi {

enum class SchemeClass { Tree, Chain, Waterfall, Transfer, Unknown };

const char* scheme_class_name(SchemeClass c);

enum class Confidence { Definite, Heuristic };

struct Rationale {
    std::string feature;
    SourceLoc loc;
};

struct Classification {
    SchemeClass scheme = SchemeClass::Unknown;
    Confidence confidence = Confidence::Definite;
    std::vector<Rationale> rationale;  // non-empty unless Unknown
};

/// Decision rules, applied in order:
///   1. Tree      if parent-link mapping and a parent-walk payout loop
///   2. Transfer  if single last-depositor, one forwarding send, doubling fee
///   3. Chain     if investor array and a constant-multiplier payout loop
///   4. Waterfall if investor array and a pro-rata crediting loop
///   5. Unknown otherwise
/// Confidence degrades to Heuristic when several rules match or several
/// storage shapes coexist.
Classification classify(const ContractFingerprint& fp);

}  // namespace ponzi
