// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/sim/fomo3d.hpp"

#include "ponzi/hash.hpp"

#include <cassert>
#include <sstream>

namespace ponzi::sim {

namespace {

constexpr std::uint64_t kDay = 24 * 60 * 60;
constexpr std::uint64_t kExtension = 30;

void check_split(const Fomo3dParams& params) {
    for (const auto& [team, split] : params.split) {
        if (split.pot_pct + split.dividend_pct != 86)
            throw SimError(SimError::Kind::BadScript,
                           std::string("team split for ") + team_name(team) +
                               " must put 86% into pot plus dividends");
    }
}

}  // namespace

const char* team_name(Team t) {
    switch (t) {
        case Team::Snek: return "snek";
        case Team::Bull: return "bull";
        case Team::Whale: return "whale";
        case Team::Bear: return "bear";
    }
    return "?";
}

Team team_from_name(const std::string& name) {
    if (name == "snek") return Team::Snek;
    if (name == "bull") return Team::Bull;
    if (name == "whale") return Team::Whale;
    if (name == "bear") return Team::Bear;
    throw SimError(SimError::Kind::BadScript, "unknown team: " + name);
}

RoundState round_start(Fomo3dParams params, std::uint64_t now) {
    check_split(params);
    RoundState s;
    s.params = std::move(params);
    s.deadline = now + kDay;
    return s;
}

Wei compute_seed(const BlockCtx& ctx, const ActorId& sender) {
    if (ctx.timestamp == 0)
        throw SimError(SimError::Kind::DivisionByZero, "block timestamp is zero");
    const Wei ts(ctx.timestamp);
    Wei sum = Wei(ctx.timestamp);
    sum += Wei(ctx.difficulty);
    sum += sha256_uint(ctx.coinbase) / ts;
    sum += Wei(ctx.gaslimit);
    sum += sha256_uint(sender) / ts;
    sum += Wei(ctx.number);
    return sha256_uint(sum.str());
}

bool airdrop_win(const Wei& seed, unsigned tracker) {
    assert(tracker <= 10);
    return seed % 1000 < tracker;
}

bool is_human(const AccountModel& account) {
    const std::uint64_t effective = account.in_constructor_phase ? 0 : account.code_size;
    return effective == 0;
}

std::vector<Event> buy_keys(RoundState& state, const ActorId& sender, const Wei& eth, Team team,
                            const std::optional<ActorId>& referrer, const BlockCtx& ctx,
                            std::uint64_t now) {
    if (state.round_over || now >= state.deadline)
        throw SimError(SimError::Kind::RoundClosed, "round is over");

    std::vector<Event> events;
    auto emit = [&](EventKind kind, const ActorId& actor, Wei amount) {
        events.push_back({kind, actor, std::move(amount), state.next_step++});
    };
    emit(EventKind::Deposit, sender, eth);

    // five fixed shares; the pot absorbs every floor-division remainder so the
    // buckets always sum to the purchase exactly
    const TeamSplit& split = state.params.split.at(team);
    Wei dividends = eth * split.dividend_pct / 100;
    Wei referral = eth * 10 / 100;
    Wei teamShare = eth * 2 / 100;
    Wei swapShare = eth / 100;
    Wei dropShare = eth / 100;
    Wei potShare = eth - dividends - referral - teamShare - swapShare - dropShare;

    state.pot += potShare;
    state.dividend_pool += dividends;
    if (referrer) {
        state.referral_ledger[*referrer] += referral;
        emit(EventKind::Credit, *referrer, referral);
    } else {
        state.dividend_pool += referral;
    }
    state.team_fund += teamShare;
    state.pot_swap += swapShare;
    state.airdrop_pot += dropShare;

    state.deadline = std::min(state.deadline + kExtension, now + kDay);
    state.last_buyer = sender;

    if (eth > state.params.airdrop_threshold) {
        state.airdrop_tracker = std::min(state.airdrop_tracker + 1, state.params.tracker_cap);
        if (airdrop_win(compute_seed(ctx, sender), state.airdrop_tracker)) {
            Wei prize = state.airdrop_pot / 4;  // the first prize tier
            state.airdrop_pot -= prize;
            emit(EventKind::Payout, sender, prize);
            state.airdrop_tracker = 0;
        }
    }
    return events;
}

Event finalize_round(RoundState& state, std::uint64_t now) {
    if (state.round_over) throw SimError(SimError::Kind::RoundClosed, "round already finalized");
    if (now < state.deadline) throw SimError(SimError::Kind::RoundActive, "round still active");
    if (!state.last_buyer) throw SimError(SimError::Kind::NoBuyers, "nobody bought a key");
    Wei prize = state.pot * 48 / 100;
    state.pot -= prize;
    state.round_over = true;
    return {EventKind::Payout, *state.last_buyer, prize, state.next_step++};
}

// ---------------------------------------------------------------------------
// Scripts
// ---------------------------------------------------------------------------

namespace {

BlockCtx parse_block(const std::string& spec, int line) {
    BlockCtx ctx;
    std::istringstream in(spec);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 5)
        throw SimError(SimError::Kind::BadScript,
                       "line " + std::to_string(line) +
                           ": --block wants ts:difficulty:coinbase:gaslimit:number");
    try {
        ctx.timestamp = std::stoull(parts[0]);
        ctx.difficulty = std::stoull(parts[1]);
        ctx.coinbase = parts[2];
        ctx.gaslimit = std::stoull(parts[3]);
        ctx.number = std::stoull(parts[4]);
    } catch (const std::exception&) {
        throw SimError(SimError::Kind::BadScript,
                       "line " + std::to_string(line) + ": malformed --block value");
    }
    return ctx;
}

}  // namespace

std::vector<RoundAction> parse_round_script(std::string_view text) {
    std::vector<RoundAction> actions;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string verb;
        if (!(ls >> verb)) continue;
        RoundAction a;
        a.line = lineNo;
        auto flag_value = [&](const std::string& flag) {
            std::string value;
            if (!(ls >> value))
                throw SimError(SimError::Kind::BadScript,
                               "line " + std::to_string(lineNo) + ": " + flag + " needs a value");
            return value;
        };
        if (verb == "buy") {
            a.kind = RoundAction::Kind::Buy;
            std::string amount;
            if (!(ls >> a.actor >> amount))
                throw SimError(SimError::Kind::BadScript,
                               "line " + std::to_string(lineNo) + ": buy wants actor and amount");
            try {
                a.amount = parse_amount(amount);
            } catch (const AmountError& e) {
                throw SimError(SimError::Kind::BadScript,
                               "line " + std::to_string(lineNo) + ": " + e.what());
            }
            std::string flag;
            while (ls >> flag) {
                if (flag == "--team") a.team = team_from_name(flag_value(flag));
                else if (flag == "--ref") a.referrer = flag_value(flag);
                else if (flag == "--block") a.block = parse_block(flag_value(flag), lineNo);
                else
                    throw SimError(SimError::Kind::BadScript,
                                   "line " + std::to_string(lineNo) + ": unknown flag " + flag);
            }
        } else if (verb == "finalize") {
            a.kind = RoundAction::Kind::Finalize;
            std::string flag;
            while (ls >> flag) {
                if (flag == "--now") a.now = std::stoull(flag_value(flag));
                else
                    throw SimError(SimError::Kind::BadScript,
                                   "line " + std::to_string(lineNo) + ": unknown flag " + flag);
            }
        } else {
            throw SimError(SimError::Kind::BadScript,
                           "line " + std::to_string(lineNo) + ": unknown verb " + verb);
        }
        actions.push_back(std::move(a));
    }
    return actions;
}

RoundResult run_round(const Fomo3dParams& params, const std::vector<RoundAction>& script) {
    // deterministic synthetic chain when the script omits --block
    BlockCtx auto_ctx{1000000, 1000, "miner", 8000000, 1};
    bool started = false;
    RoundResult result{round_start(params, auto_ctx.timestamp), {}};

    for (const RoundAction& a : script) {
        if (a.kind == RoundAction::Kind::Buy) {
            BlockCtx ctx = a.block.value_or(auto_ctx);
            if (!a.block) {
                ctx.timestamp = auto_ctx.timestamp + (started ? kExtension : 0);
                ctx.number = auto_ctx.number + 1;
                ctx.difficulty = auto_ctx.difficulty + 1;
            }
            if (!started) {
                result.state = round_start(params, ctx.timestamp);
                started = true;
            }
            auto events = buy_keys(result.state, a.actor, a.amount, a.team, a.referrer, ctx,
                                   ctx.timestamp);
            result.trace.insert(result.trace.end(), events.begin(), events.end());
            auto_ctx = ctx;
        } else {
            std::uint64_t now = a.now.value_or(result.state.deadline);
            result.trace.push_back(finalize_round(result.state, now));
        }
    }
    return result;
}

}  // namespace ponzi::sim
