// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/money.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ponzi::sim {

using ActorId = std::string;

enum class EventKind { Deposit, Payout, Refund, Reject, OwnerFee, Credit };

const char* event_kind_name(EventKind k);

struct Event {
    EventKind kind;
    ActorId actor;
    Wei amount;
    std::size_t step = 0;  // strictly increasing within a trace
};

struct SimError : std::runtime_error {
    enum class Kind {
        UnknownActor,
        CapReached,
        RoundClosed,
        RoundActive,
        NoBuyers,
        DivisionByZero,
        BadScript,
    };
    SimError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
    Kind kind;
};

/// Per-actor money flow. totalOut counts payouts and refunds the actor
/// actually received; ledger credits count only once withdrawn.
struct RoiRow {
    Wei total_in = 0;
    Wei total_out = 0;
    std::optional<Ratio> roi;  // total_out / total_in, undefined when nothing in
};

struct RoiTable {
    std::map<ActorId, RoiRow> rows;
    Wei owner_gain = 0;          // sum of OwnerFee events
    Wei contract_residual = 0;   // money still held by the contract, ledger included
};

RoiTable roi_from_trace(const std::vector<Event>& trace);

}  // namespace ponzi::sim
