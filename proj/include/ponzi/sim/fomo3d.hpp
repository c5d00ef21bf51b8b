// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/sim/events.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ponzi::sim {

enum class Team { Snek, Bull, Whale, Bear };

const char* team_name(Team t);
Team team_from_name(const std::string& name);  // SimError(BadScript)

/// Per-team shares in hundredths; pot + dividend is always 86.
struct TeamSplit {
    unsigned pot_pct = 50;
    unsigned dividend_pct = 36;
};

struct Fomo3dParams {
    Wei airdrop_threshold = ether(1) / 10;  // orders above this bump the tracker
    unsigned tracker_cap = 10;              // thousandths of win probability
    std::map<Team, TeamSplit> split = {
        {Team::Snek, {}}, {Team::Bull, {}}, {Team::Whale, {}}, {Team::Bear, {}}};
};

/// Block-header inputs to the on-chain "random" seed.
struct BlockCtx {
    std::uint64_t timestamp = 0;
    std::uint64_t difficulty = 0;
    ActorId coinbase;
    std::uint64_t gaslimit = 0;
    std::uint64_t number = 0;
};

struct AccountModel {
    ActorId actor;
    std::uint64_t code_size = 0;
    bool in_constructor_phase = false;
};

struct RoundState {
    Fomo3dParams params;
    Wei pot = 0;
    Wei dividend_pool = 0;                 // undirected holder dividends
    std::map<ActorId, Wei> referral_ledger;
    Wei team_fund = 0;
    Wei pot_swap = 0;
    Wei airdrop_pot = 0;
    std::uint64_t deadline = 0;            // seconds
    std::optional<ActorId> last_buyer;
    unsigned airdrop_tracker = 0;          // in [0, tracker_cap]
    bool round_over = false;
    std::size_t next_step = 0;
};

/// Opens a round with the full 24-hour countdown.
RoundState round_start(Fomo3dParams params, std::uint64_t now);

/// Deterministic seed mirroring the buggy on-chain recipe: a keyed hash of
/// block fields and the sender, divided by the timestamp in two places.
/// Throws SimError(DivisionByZero) when the timestamp is zero.
Wei compute_seed(const BlockCtx& ctx, const ActorId& sender);

/// True when seed mod 1000 falls below the tracker. Exactly `tracker` of the
/// 1000 residues win.
bool airdrop_win(const Wei& seed, unsigned tracker);

/// The extcodesize gate: zero effective code size passes, and a contract
/// still under construction has effective size zero.
bool is_human(const AccountModel& account);

/// Splits the purchase into pot/dividends/referral/team/pot-swap/airdrop
/// buckets that sum to the amount exactly, extends the countdown by 30 s
/// capped at 24 h, and runs the airdrop lottery for qualifying orders.
/// Throws SimError(RoundClosed) when the round is over or past its deadline.
std::vector<Event> buy_keys(RoundState& state, const ActorId& sender, const Wei& eth, Team team,
                            const std::optional<ActorId>& referrer, const BlockCtx& ctx,
                            std::uint64_t now);

/// Pays 48% of the pot to the last buyer. Throws SimError(RoundActive) before
/// the deadline and SimError(NoBuyers) when nobody bought.
Event finalize_round(RoundState& state, std::uint64_t now);

// ---------------------------------------------------------------------------
// Round scripts: "buy <actor> <amount><unit> [--team T] [--ref R]
// [--block ts:difficulty:coinbase:gaslimit:number]" and "finalize --now TS".
// ---------------------------------------------------------------------------

struct RoundAction {
    enum class Kind { Buy, Finalize } kind;
    ActorId actor;
    Wei amount = 0;
    Team team = Team::Bull;
    std::optional<ActorId> referrer;
    std::optional<BlockCtx> block;
    std::optional<std::uint64_t> now;
    int line = 0;
};

std::vector<RoundAction> parse_round_script(std::string_view text);  // SimError(BadScript)

struct RoundResult {
    RoundState state;
    std::vector<Event> trace;
};

/// Runs a round script. Missing --block fields auto-advance deterministically
/// from the previous action.
RoundResult run_round(const Fomo3dParams& params, const std::vector<RoundAction>& script);

}  // namespace ponzi::sim
