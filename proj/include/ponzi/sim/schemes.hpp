// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/sim/events.hpp"

#include <variant>

namespace ponzi::sim {

enum class SchemeKind { Tree, Chain, Waterfall, Transfer };

const char* scheme_kind_name(SchemeKind k);
SchemeKind scheme_kind_from_name(const std::string& name);  // SimError(BadScript)

// ---------------------------------------------------------------------------
// Tree: deposits walk up the inviter chain, halving at each level, at most
// six levels before the remainder lands on the terminating ancestor.
// ---------------------------------------------------------------------------

struct TreeParams {
    Wei contribution = finney(100);  // minimum entry stake
    ActorId top = "top";
};

struct TreeState {
    TreeParams params;
    struct Node {
        ActorId inviter;
        Wei total_payout = 0;
    };
    std::map<ActorId, Node> nodes;
    Wei balance = 0;  // always zero between calls: every accepted entry distributes fully
    std::size_t next_step = 0;
};

TreeState tree_init(TreeParams params);

/// Too-small deposits, repeated senders and unknown inviters are refunded in
/// full. Accepted entries register the sender and pay the ancestor chain.
std::vector<Event> tree_enter(TreeState& state, const ActorId& sender, const ActorId& inviter,
                              const Wei& amount);

// ---------------------------------------------------------------------------
// Chain: deposits above the minimum join a queue; the contract pays a fixed
// multiple of the stored stake while the balance allows. The queue index is
// never advanced, exactly as the original code behaves; corrected mode keeps
// a persistent head instead.
// ---------------------------------------------------------------------------

struct ChainParams {
    Wei min_deposit = finney(500);  // strictly-greater-than gate
    unsigned multiplier_num = 200;
    unsigned multiplier_den = 100;
    bool faithful_stuck_index = true;
};

struct ChainState {
    ChainParams params;
    struct Depositor {
        ActorId actor;
        Wei amount;
    };
    std::vector<Depositor> depositors;
    Wei balance = 0;
    Wei total_deposited = 0;
    Wei total_paid_out = 0;
    std::size_t head = 0;  // used only in corrected mode
    std::size_t next_step = 0;
};

ChainState chain_init(ChainParams params);
std::vector<Event> chain_deposit(ChainState& state, const ActorId& sender, const Wei& amount);

// ---------------------------------------------------------------------------
// Waterfall: half of each investment goes to the owner, the rest is credited
// to earlier investors pro rata; credits sit in a ledger until withdrawn.
// ---------------------------------------------------------------------------

struct WaterfallParams {
    unsigned fee_num = 1;
    unsigned fee_den = 2;
    Wei cap = ether(200000);  // investments close once total reaches this
    ActorId owner = "owner";
};

struct WaterfallState {
    WaterfallParams params;
    std::vector<ActorId> investors;       // first-investment order
    std::map<ActorId, Wei> invested;      // full deposited amounts
    std::map<ActorId, Wei> ledger;        // accrued, not yet withdrawn
    Wei total = 0;
    Wei vault = 0;  // money physically held (ledger + rounding remainders)
    std::size_t next_step = 0;
};

WaterfallState waterfall_init(WaterfallParams params);
/// Throws SimError(CapReached) when the total has reached the cap.
std::vector<Event> waterfall_invest(WaterfallState& state, const ActorId& sender,
                                    const Wei& amount);
std::vector<Event> waterfall_withdraw(WaterfallState& state, const ActorId& actor);

// ---------------------------------------------------------------------------
// Transfer: one slot; each accepted deposit pays the previous depositor in
// full and doubles the required amount for the next entry.
// ---------------------------------------------------------------------------

struct TransferParams {
    Wei starting_amount = ether(1);
};

struct TransferState {
    TransferParams params;
    unsigned round = 1;
    Wei next_amount;
    std::optional<ActorId> last_depositor;
    Wei last_depositor_amount = 0;
    Wei balance = 0;  // the first deposit is never forwarded
    std::size_t next_step = 0;
};

TransferState transfer_init(TransferParams params);
std::vector<Event> transfer_deposit(TransferState& state, const ActorId& sender,
                                    const Wei& amount);

// ---------------------------------------------------------------------------
// Scenario scripts
// ---------------------------------------------------------------------------

/// One action per line: "<verb> <actor> <amount><unit> [inviter]".
/// Verbs: enter (tree), deposit (chain/transfer), invest and withdraw
/// (waterfall). '#' starts a comment; blank lines are skipped.
struct Action {
    std::string verb;
    ActorId actor;
    std::optional<Wei> amount;
    std::optional<ActorId> inviter;
    int line = 0;
};

std::vector<Action> parse_script(std::string_view text);  // SimError(BadScript)

struct ScenarioParams {
    TreeParams tree;
    ChainParams chain;
    WaterfallParams waterfall;
    TransferParams transfer;
};

struct ScenarioResult {
    SchemeKind kind;
    std::vector<Event> trace;
    RoiTable roi;
    std::variant<TreeState, ChainState, WaterfallState, TransferState> final_state;

    /// ledger money still owed to participants (waterfall only)
    Wei ledger_residual() const;
    /// money held by the contract beyond the ledger
    Wei unallocated_balance() const;
};

/// Deterministic sequential execution; rejected actions become events and the
/// run continues.
ScenarioResult run_scenario(SchemeKind kind, const ScenarioParams& params,
                            const std::vector<Action>& script);

}  // namespace ponzi::sim
