// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/sim/schemes.hpp"

#include <cassert>
#include <sstream>

namespace ponzi::sim {

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::Deposit: return "Deposit";
        case EventKind::Payout: return "Payout";
        case EventKind::Refund: return "Refund";
        case EventKind::Reject: return "Reject";
        case EventKind::OwnerFee: return "OwnerFee";
        case EventKind::Credit: return "Credit";
    }
    return "?";
}

const char* scheme_kind_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::Tree: return "tree";
        case SchemeKind::Chain: return "chain";
        case SchemeKind::Waterfall: return "waterfall";
        case SchemeKind::Transfer: return "transfer";
    }
    return "?";
}

SchemeKind scheme_kind_from_name(const std::string& name) {
    if (name == "tree") return SchemeKind::Tree;
    if (name == "chain") return SchemeKind::Chain;
    if (name == "waterfall") return SchemeKind::Waterfall;
    if (name == "transfer") return SchemeKind::Transfer;
    throw SimError(SimError::Kind::BadScript, "unknown scheme: " + name);
}

RoiTable roi_from_trace(const std::vector<Event>& trace) {
    RoiTable table;
    for (const Event& ev : trace) {
        switch (ev.kind) {
            case EventKind::Deposit:
                table.rows[ev.actor].total_in += ev.amount;
                break;
            case EventKind::Payout:
            case EventKind::Refund:
                table.rows[ev.actor].total_out += ev.amount;
                break;
            case EventKind::OwnerFee:
                table.rows[ev.actor].total_out += ev.amount;
                table.owner_gain += ev.amount;
                break;
            case EventKind::Reject:
            case EventKind::Credit:
                break;  // money never entered / not yet left
        }
    }
    Wei in = 0, out = 0;
    for (auto& [actor, row] : table.rows) {
        if (row.total_in > 0) row.roi = Ratio(row.total_out, row.total_in);
        in += row.total_in;
        out += row.total_out;
    }
    table.contract_residual = in - out;
    return table;
}

namespace {

class Emitter {
public:
    Emitter(std::size_t& counter) : counter_(counter) {}
    void operator()(std::vector<Event>& out, EventKind kind, const ActorId& actor, Wei amount) {
        assert(amount >= 0);
        out.push_back({kind, actor, std::move(amount), counter_++});
    }

private:
    std::size_t& counter_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Tree
// ---------------------------------------------------------------------------

TreeState tree_init(TreeParams params) {
    TreeState s;
    s.params = std::move(params);
    // the top of the tree is its own inviter so entries under it pass the
    // known-inviter check
    s.nodes[s.params.top] = {s.params.top, 0};
    return s;
}

std::vector<Event> tree_enter(TreeState& state, const ActorId& sender, const ActorId& inviter,
                              const Wei& amount) {
    std::vector<Event> events;
    Emitter emit(state.next_step);
    emit(events, EventKind::Deposit, sender, amount);
    state.balance += amount;

    const bool tooSmall = amount < state.params.contribution;
    const bool alreadyIn = state.nodes.contains(sender);
    const bool unknownInviter = !state.nodes.contains(inviter);
    if (tooSmall || alreadyIn || unknownInviter) {
        emit(events, EventKind::Refund, sender, amount);
        state.balance -= amount;
        return events;
    }

    state.nodes[sender] = {inviter, 0};
    ActorId next = inviter;
    Wei rest = amount;
    int level = 1;
    while (next != state.params.top && level < 7) {
        Wei toSend = rest / 2;
        emit(events, EventKind::Payout, next, toSend);
        state.nodes[next].total_payout += toSend;
        state.balance -= toSend;
        rest -= toSend;
        next = state.nodes[next].inviter;
        ++level;
    }
    emit(events, EventKind::Payout, next, rest);
    state.nodes[next].total_payout += rest;
    state.balance -= rest;
    return events;
}

// ---------------------------------------------------------------------------
// Chain
// ---------------------------------------------------------------------------

ChainState chain_init(ChainParams params) {
    ChainState s;
    s.params = std::move(params);
    return s;
}

std::vector<Event> chain_deposit(ChainState& state, const ActorId& sender, const Wei& amount) {
    std::vector<Event> events;
    Emitter emit(state.next_step);
    if (amount <= state.params.min_deposit) {  // the gate is strictly greater-than
        emit(events, EventKind::Reject, sender, amount);
        return events;
    }
    emit(events, EventKind::Deposit, sender, amount);
    state.depositors.push_back({sender, amount});
    state.balance += amount;
    state.total_deposited += amount;

    const std::size_t playerCount = state.depositors.size();
    std::size_t nr = state.params.faithful_stuck_index ? 0 : state.head;
    auto payoutOf = [&](const Wei& stake) {
        return stake * state.params.multiplier_num / state.params.multiplier_den;
    };
    while (nr < playerCount && state.balance > payoutOf(state.depositors[nr].amount)) {
        Wei payout = payoutOf(state.depositors[nr].amount);
        emit(events, EventKind::Payout, state.depositors[nr].actor, payout);
        state.balance -= payout;
        state.total_paid_out += payout;
        if (!state.params.faithful_stuck_index) {
            ++nr;
            state.head = nr;
        }
        // faithful mode leaves nr where it is, like the original loop
    }
    return events;
}

// ---------------------------------------------------------------------------
// Waterfall
// ---------------------------------------------------------------------------

WaterfallState waterfall_init(WaterfallParams params) {
    WaterfallState s;
    s.params = std::move(params);
    return s;
}

std::vector<Event> waterfall_invest(WaterfallState& state, const ActorId& sender,
                                    const Wei& amount) {
    if (state.total >= state.params.cap)
        throw SimError(SimError::Kind::CapReached, "investment cap reached");

    std::vector<Event> events;
    Emitter emit(state.next_step);
    emit(events, EventKind::Deposit, sender, amount);
    state.vault += amount;

    Wei fee = amount * state.params.fee_num / state.params.fee_den;
    emit(events, EventKind::OwnerFee, state.params.owner, fee);
    state.vault -= fee;
    Wei dividend = amount - fee;

    if (!state.investors.empty()) {
        for (const ActorId& prior : state.investors) {
            Wei credit = dividend * state.invested[prior] / state.total;
            emit(events, EventKind::Credit, prior, credit);
            state.ledger[prior] += credit;
        }
    }

    if (!state.invested.contains(sender) || state.invested[sender] == 0)
        state.investors.push_back(sender);
    state.invested[sender] += amount;  // the full amount, fee included
    state.total += amount;
    return events;
}

std::vector<Event> waterfall_withdraw(WaterfallState& state, const ActorId& actor) {
    std::vector<Event> events;
    Emitter emit(state.next_step);
    auto it = state.ledger.find(actor);
    if (it == state.ledger.end() || it->second == 0) return events;
    Wei amount = it->second;
    it->second = 0;
    state.vault -= amount;
    emit(events, EventKind::Payout, actor, amount);
    return events;
}

// ---------------------------------------------------------------------------
// Transfer
// ---------------------------------------------------------------------------

TransferState transfer_init(TransferParams params) {
    TransferState s;
    s.params = std::move(params);
    s.next_amount = s.params.starting_amount;
    return s;
}

std::vector<Event> transfer_deposit(TransferState& state, const ActorId& sender,
                                    const Wei& amount) {
    std::vector<Event> events;
    Emitter emit(state.next_step);
    const Wei required = state.round == 1 ? state.params.starting_amount : state.next_amount;
    if (amount != required) {
        emit(events, EventKind::Reject, sender, amount);
        return events;
    }
    emit(events, EventKind::Deposit, sender, amount);
    state.balance += amount;
    if (state.round > 1) {
        emit(events, EventKind::Payout, *state.last_depositor, amount);
        state.balance -= amount;
    }
    state.last_depositor_amount = amount;
    state.last_depositor = sender;
    state.next_amount = amount * 2;
    ++state.round;
    return events;
}

// ---------------------------------------------------------------------------
// Scripts and scenarios
// ---------------------------------------------------------------------------

std::vector<Action> parse_script(std::string_view text) {
    std::vector<Action> actions;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Action a;
        a.line = lineNo;
        if (!(ls >> a.verb)) continue;  // blank line
        if (!(ls >> a.actor))
            throw SimError(SimError::Kind::BadScript,
                           "line " + std::to_string(lineNo) + ": missing actor");
        std::string word;
        if (ls >> word) {
            try {
                a.amount = parse_amount(word);
            } catch (const AmountError& e) {
                throw SimError(SimError::Kind::BadScript,
                               "line " + std::to_string(lineNo) + ": " + e.what());
            }
            std::string inviter;
            if (ls >> inviter) a.inviter = inviter;
        }
        actions.push_back(std::move(a));
    }
    return actions;
}

namespace {

[[noreturn]] void bad_action(const Action& a, const std::string& why) {
    throw SimError(SimError::Kind::BadScript,
                   "line " + std::to_string(a.line) + ": " + why + " (verb '" + a.verb + "')");
}

void require_amount(const Action& a) {
    if (!a.amount) bad_action(a, "missing amount");
}

}  // namespace

Wei ScenarioResult::ledger_residual() const {
    if (const auto* w = std::get_if<WaterfallState>(&final_state)) {
        Wei sum = 0;
        for (const auto& [actor, amount] : w->ledger) sum += amount;
        return sum;
    }
    return 0;
}

Wei ScenarioResult::unallocated_balance() const {
    return std::visit(
        [&](const auto& st) -> Wei {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, WaterfallState>) return st.vault - ledger_residual();
            else return st.balance;
        },
        final_state);
}

ScenarioResult run_scenario(SchemeKind kind, const ScenarioParams& params,
                            const std::vector<Action>& script) {
    ScenarioResult result;
    result.kind = kind;
    auto append = [&](std::vector<Event> events) {
        result.trace.insert(result.trace.end(), std::make_move_iterator(events.begin()),
                            std::make_move_iterator(events.end()));
    };

    switch (kind) {
        case SchemeKind::Tree: {
            TreeState state = tree_init(params.tree);
            for (const Action& a : script) {
                if (a.verb != "enter") bad_action(a, "tree scripts use 'enter'");
                require_amount(a);
                ActorId inviter = a.inviter.value_or(state.params.top);
                append(tree_enter(state, a.actor, inviter, *a.amount));
            }
            result.final_state = std::move(state);
            break;
        }
        case SchemeKind::Chain: {
            ChainState state = chain_init(params.chain);
            for (const Action& a : script) {
                if (a.verb != "deposit") bad_action(a, "chain scripts use 'deposit'");
                require_amount(a);
                append(chain_deposit(state, a.actor, *a.amount));
            }
            result.final_state = std::move(state);
            break;
        }
        case SchemeKind::Waterfall: {
            WaterfallState state = waterfall_init(params.waterfall);
            for (const Action& a : script) {
                if (a.verb == "invest") {
                    require_amount(a);
                    try {
                        append(waterfall_invest(state, a.actor, *a.amount));
                    } catch (const SimError&) {
                        std::vector<Event> rejected;
                        Emitter emit(state.next_step);
                        emit(rejected, EventKind::Reject, a.actor, *a.amount);
                        append(std::move(rejected));
                    }
                } else if (a.verb == "withdraw") {
                    append(waterfall_withdraw(state, a.actor));
                } else {
                    bad_action(a, "waterfall scripts use 'invest' or 'withdraw'");
                }
            }
            result.final_state = std::move(state);
            break;
        }
        case SchemeKind::Transfer: {
            TransferState state = transfer_init(params.transfer);
            for (const Action& a : script) {
                if (a.verb != "deposit") bad_action(a, "transfer scripts use 'deposit'");
                require_amount(a);
                append(transfer_deposit(state, a.actor, *a.amount));
            }
            result.final_state = std::move(state);
            break;
        }
    }

    result.roi = roi_from_trace(result.trace);
    return result;
}

}  // namespace ponzi::sim
