// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/fingerprint.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace ponzi {

using namespace sol;

namespace {

bool is_ordering_op(std::string_view op) {
    return op == "<" || op == "<=" || op == ">" || op == ">=";
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

/// Root identifier of a member/index access chain, e.g. Tree for
/// Tree[next].inviter. Null when the chain is not rooted at an identifier.
const Ident* chain_root(const Expr& e) {
    const Expr* cur = &e;
    for (;;) {
        if (const auto* id = cur->as<Ident>()) return id;
        if (const auto* m = cur->as<Member>()) { cur = m->base.get(); continue; }
        if (const auto* ix = cur->as<Index>()) { cur = ix->base.get(); continue; }
        return nullptr;
    }
}

bool is_msg_member(const Expr& e, std::string_view member) {
    const auto* m = e.as<Member>();
    if (!m || m->member != member) return false;
    const auto* base = m->base->as<Ident>();
    return base && base->name == "msg";
}

/// Contract-wide storage context shared by all detectors.
struct StorageCtx {
    const SourceUnit& unit;
    const ContractDef& c;

    std::set<std::string> state_names;
    std::set<std::string> dynamic_arrays;                  // dynamic-array state vars
    std::set<std::string> mappings;                        // all mapping state vars
    std::map<std::string, std::string> parent_field;       // mapping var -> address field
    std::set<std::string> addr_scalars;                    // scalar address state vars
    bool has_record_investor_array = false;
    const StateVarDef* record_investor_array = nullptr;
    bool has_addr_array = false;
    const StateVarDef* addr_array = nullptr;
    bool has_addr_to_uint_mapping = false;

    explicit StorageCtx(const SourceUnit& u, const ContractDef& contract)
        : unit(u), c(contract) {
        for (const auto& v : c.state_vars) {
            state_names.insert(v.name);
            const TypeName& t = v.type;
            if (t.is_dynamic_array()) {
                dynamic_arrays.insert(v.name);
                const TypeName& elem = *t.value;
                if (elem.kind == TypeName::Kind::UserDefined) {
                    if (const RecordDef* r = c.record(elem.name)) {
                        bool addr = false, amount = false;
                        for (const auto& f : r->fields) {
                            if (f.type.is_address()) addr = true;
                            if (f.type.is_uint_like()) amount = true;
                        }
                        if (addr && amount) {
                            has_record_investor_array = true;
                            if (!record_investor_array) record_investor_array = &v;
                        }
                    }
                } else if (elem.is_address()) {
                    has_addr_array = true;
                    if (!addr_array) addr_array = &v;
                }
            } else if (t.kind == TypeName::Kind::Mapping) {
                mappings.insert(v.name);
                if (t.key->is_address() && t.value->is_uint_like())
                    has_addr_to_uint_mapping = true;
                if (t.key->is_address() && t.value->kind == TypeName::Kind::UserDefined) {
                    if (const RecordDef* r = c.record(t.value->name)) {
                        for (const auto& f : r->fields) {
                            if (f.type.is_address()) {
                                parent_field[v.name] = f.name;
                                break;
                            }
                        }
                    }
                }
            } else if (t.is_address()) {
                addr_scalars.insert(v.name);
            }
        }
    }

    std::string_view text(const Span& s) const { return span_text(unit, s); }
};

std::optional<Ratio> fold_impl(const ContractDef& c, const Expr& e, int depth,
                               std::set<std::string>& visiting) {
    if (depth > 16) return std::nullopt;
    if (const auto* num = e.as<NumberLit>()) return num->value;
    if (const auto* id = e.as<Ident>()) {
        if (visiting.contains(id->name)) return std::nullopt;
        const StateVarDef* v = c.state_var(id->name);
        if (!v || !v->init) return std::nullopt;
        visiting.insert(id->name);
        auto r = fold_impl(c, *v->init, depth + 1, visiting);
        visiting.erase(id->name);
        return r;
    }
    if (const auto* un = e.as<Unary>()) {
        if (un->op == "-" && un->prefix) {
            auto v = fold_impl(c, *un->operand, depth + 1, visiting);
            if (v) return -*v;
        }
        return std::nullopt;
    }
    if (const auto* bin = e.as<Binary>()) {
        auto l = fold_impl(c, *bin->lhs, depth + 1, visiting);
        auto r = fold_impl(c, *bin->rhs, depth + 1, visiting);
        if (!l || !r) return std::nullopt;
        if (bin->op == "+") return *l + *r;
        if (bin->op == "-") return *l - *r;
        if (bin->op == "*") return *l * *r;
        if (bin->op == "/" && *r != 0) return *l / *r;
        return std::nullopt;
    }
    return std::nullopt;
}

/// Per-function scan: derivation sets, guards, and the three site lists.
class FunctionScan {
public:
    FunctionScan(const StorageCtx& ctx, std::string fnName, const Block& body)
        : ctx_(ctx), fn_name_(std::move(fnName)), body_(body) {
        derivation_pass();
        main_pass();
        finish_pending();
    }

    std::vector<SendSite> sends;
    std::vector<ArithSite> ariths;
    std::vector<IndexSite> indices;

    const std::set<std::string>& msg_locals() const { return msg_locals_; }

private:
    const StorageCtx& ctx_;
    std::string fn_name_;
    const Block& body_;

    std::set<std::string> msg_locals_;
    std::set<std::string> state_locals_;
    std::set<std::string> cond_idents_;
    std::set<std::string> guarded_state_;
    std::set<std::pair<std::string, std::string>> bounded_;  // (array, index text)
    std::map<std::string, ArithSite> pending_local_;         // var -> candidate site
    std::set<std::string> sent_idents_;

    bool mentions_msg_value(const Expr& e) const {
        bool found = false;
        walk_exprs(e, [&](const Expr& x) {
            if (is_msg_member(x, "value")) found = true;
            if (const auto* id = x.as<Ident>())
                if (msg_locals_.contains(id->name)) found = true;
        });
        return found;
    }

    bool mentions_state(const Expr& e) const {
        bool found = false;
        walk_exprs(e, [&](const Expr& x) {
            if (const auto* id = x.as<Ident>())
                if (ctx_.state_names.contains(id->name) || state_locals_.contains(id->name))
                    found = true;
        });
        return found;
    }

    static const Call* send_call(const Expr& e) {
        const auto* call = e.as<Call>();
        if (!call || call->args.size() != 1) return nullptr;
        const auto* m = call->callee->as<Member>();
        if (!m || (m->member != "send" && m->member != "transfer")) return nullptr;
        return call;
    }

    static bool is_require_or_assert(const Expr& e, const char* name) {
        const auto* call = e.as<Call>();
        if (!call || call->args.empty()) return false;
        const auto* id = call->callee->as<Ident>();
        return id && id->name == name;
    }

    // ---- pass 1: local derivation and condition identifiers ----------------

    void note_local(const std::string& name, const Expr* init) {
        if (!init) return;
        if (mentions_msg_value(*init)) msg_locals_.insert(name);
        if (mentions_state(*init)) state_locals_.insert(name);
    }

    void derivation_pass() {
        walk_stmts(body_, [&](const Stmt& s) {
            if (const auto* d = s.as<VarDeclStmt>()) {
                note_local(d->name, d->init.get());
            } else if (const auto* es = s.as<ExprStmt>()) {
                if (const auto* a = es->expr->as<Assign>())
                    if (const auto* id = a->target->as<Ident>())
                        if (!ctx_.state_names.contains(id->name))
                            note_local(id->name, a->value.get());
            }
            collect_condition_idents(s);
        });
    }

    void collect_condition_idents(const Stmt& s) {
        const Expr* cond = nullptr;
        if (const auto* i = s.as<IfStmt>()) cond = i->cond.get();
        else if (const auto* w = s.as<WhileStmt>()) cond = w->cond.get();
        else if (const auto* f = s.as<ForStmt>()) cond = f->cond.get();
        else if (const auto* es = s.as<ExprStmt>()) {
            if (is_require_or_assert(*es->expr, "require") ||
                is_require_or_assert(*es->expr, "assert"))
                cond = es->expr->as<Call>()->args[0].get();
        }
        if (!cond) return;
        walk_exprs(*cond, [&](const Expr& x) {
            if (const auto* id = x.as<Ident>()) cond_idents_.insert(id->name);
        });
    }

    // ---- pass 2: guards, sends, arithmetic, indexing ------------------------

    void main_pass() {
        for (const auto& st : body_.stmts) scan_stmt(*st, 0);
    }

    void scan_stmt(const Stmt& s, int loopDepth) {
        if (const auto* b = s.as<Block>()) {
            for (const auto& st : b->stmts) scan_stmt(*st, loopDepth);
        } else if (const auto* i = s.as<IfStmt>()) {
            scan_condition(*i->cond, loopDepth);
            scan_stmt(*i->then_branch, loopDepth);
            if (i->else_branch) scan_stmt(*i->else_branch, loopDepth);
        } else if (const auto* w = s.as<WhileStmt>()) {
            scan_condition(*w->cond, loopDepth);
            scan_stmt(*w->body, loopDepth + 1);
        } else if (const auto* f = s.as<ForStmt>()) {
            if (f->init) scan_stmt(*f->init, loopDepth);
            if (f->cond) scan_condition(*f->cond, loopDepth);
            if (f->post) scan_expr(*f->post, false, loopDepth);
            scan_stmt(*f->body, loopDepth + 1);
        } else if (const auto* r = s.as<ReturnStmt>()) {
            if (r->value) scan_expr(*r->value, false, loopDepth);
        } else if (const auto* d = s.as<VarDeclStmt>()) {
            if (d->init) {
                bool tested = cond_idents_.contains(d->name);
                scan_expr(*d->init, tested, loopDepth);
                consider_arith_local(d->name, *d->init, s.span);
            }
        } else if (const auto* es = s.as<ExprStmt>()) {
            const Expr& e = *es->expr;
            if (is_require_or_assert(e, "require") || is_require_or_assert(e, "assert")) {
                scan_condition(*e.as<Call>()->args[0], loopDepth);
                return;
            }
            if (const auto* a = e.as<Assign>()) {
                handle_assign(*a, e.span, loopDepth);
                return;
            }
            scan_expr(e, false, loopDepth);
        }
    }

    void scan_condition(const Expr& cond, int loopDepth) {
        collect_guards(cond);
        scan_expr(cond, /*checkedContext=*/true, loopDepth);
    }

    void collect_guards(const Expr& cond) {
        walk_exprs(cond, [&](const Expr& x) {
            const auto* bin = x.as<Binary>();
            if (!bin || !is_ordering_op(bin->op)) return;
            for (const Expr* side : {bin->lhs.get(), bin->rhs.get()}) {
                walk_exprs(*side, [&](const Expr& y) {
                    if (const auto* id = y.as<Ident>())
                        if (ctx_.state_names.contains(id->name)) guarded_state_.insert(id->name);
                });
            }
            record_bound(*bin->lhs, *bin->rhs);
            record_bound(*bin->rhs, *bin->lhs);
        });
    }

    void record_bound(const Expr& a, const Expr& b) {
        // a compared against b where b is arr.length: the index text a is bounded
        const auto* m = b.as<Member>();
        if (!m || m->member != "length") return;
        const auto* arr = m->base->as<Ident>();
        if (!arr || !ctx_.dynamic_arrays.contains(arr->name)) return;
        bounded_.insert({arr->name, std::string(ctx_.text(a.span))});
    }

    void handle_assign(const Assign& a, const Span& span, int loopDepth) {
        scan_expr(*a.target, false, loopDepth);
        bool tested = false;
        if (const auto* id = a.target->as<Ident>()) tested = cond_idents_.contains(id->name);
        scan_expr(*a.value, tested, loopDepth);

        const Ident* root = chain_root(*a.target);
        bool targetState = root && ctx_.state_names.contains(root->name);

        if (targetState) {
            consider_arith_state(a, *root, span);
        } else if (const auto* id = a.target->as<Ident>()) {
            consider_arith_local(id->name, *a.value, span);
        }
    }

    std::optional<std::string> arith_op_in(const Expr& rhs) const {
        std::optional<std::string> op;
        walk_exprs(rhs, [&](const Expr& x) {
            if (const auto* bin = x.as<Binary>())
                if ((bin->op == "+" || bin->op == "*") && !op) op = bin->op;
        });
        return op;
    }

    void consider_arith_state(const Assign& a, const Ident& root, const Span& span) {
        std::optional<std::string> op;
        if (a.op == "+=" || a.op == "*=") {
            op = a.op;  // the target itself is the state-derived operand
        } else if (a.op == "=") {
            op = arith_op_in(*a.value);
            if (op && !(mentions_msg_value(*a.value) || mentions_state(*a.value)))
                op = std::nullopt;
        }
        if (!op) return;
        std::set<std::string> visiting;
        if (a.op == "=" && fold_impl(ctx_.c, *a.value, 0, visiting)) return;  // literal-only
        if (guarded_state_.contains(root.name)) return;
        ariths.push_back({loc_of(span), *op, std::string(ctx_.text(span)), fn_name_});
    }

    void consider_arith_local(const std::string& name, const Expr& value, const Span& span) {
        auto op = arith_op_in(value);
        if (!op) return;
        if (!(mentions_msg_value(value) || mentions_state(value))) return;
        std::set<std::string> visiting;
        if (fold_impl(ctx_.c, value, 0, visiting)) return;
        pending_local_[name] = {loc_of(span), *op, std::string(ctx_.text(span)), fn_name_};
    }

    void scan_expr(const Expr& e, bool checkedContext, int loopDepth) {
        if (const Call* call = send_call(e)) {
            SendSite site;
            site.loc = loc_of(e.span);
            site.receiver = std::string(ctx_.text(call->callee->as<Member>()->base->span));
            site.snippet = std::string(ctx_.text(e.span));
            site.function = fn_name_;
            site.checked = checkedContext;
            site.in_loop = loopDepth > 0;
            sends.push_back(site);

            const Expr& amount = *call->args[0];
            if (const auto* id = amount.as<Ident>()) {
                sent_idents_.insert(id->name);
            } else if (arith_op_in(amount) &&
                       (mentions_msg_value(amount) || mentions_state(amount))) {
                std::set<std::string> visiting;
                if (!fold_impl(ctx_.c, amount, 0, visiting))
                    ariths.push_back({loc_of(amount.span), *arith_op_in(amount),
                                      std::string(ctx_.text(amount.span)), fn_name_});
            }
        }
        if (const auto* ix = e.as<Index>()) consider_index(*ix, e.span);
        for_each_child(e, [&](const Expr& child) { scan_expr(child, checkedContext, loopDepth); });
    }

    void consider_index(const Index& ix, const Span& span) {
        const auto* arr = ix.base->as<Ident>();
        if (!arr || !ctx_.dynamic_arrays.contains(arr->name)) return;
        if (ix.index->is<NumberLit>()) return;
        bool selfBounded = false;
        walk_exprs(*ix.index, [&](const Expr& x) {
            if (const auto* m = x.as<Member>())
                if (m->member == "length")
                    if (const auto* b = m->base->as<Ident>())
                        if (b->name == arr->name) selfBounded = true;
        });
        if (selfBounded) return;
        if (bounded_.contains({arr->name, std::string(ctx_.text(ix.index->span))})) return;
        indices.push_back({loc_of(span), std::string(ctx_.text(span)), fn_name_});
    }

    void finish_pending() {
        for (const auto& name : sent_idents_) {
            auto it = pending_local_.find(name);
            if (it != pending_local_.end()) {
                ariths.push_back(it->second);
                pending_local_.erase(it);
            }
        }
        std::stable_sort(ariths.begin(), ariths.end(),
                         [](const ArithSite& a, const ArithSite& b) { return a.loc < b.loc; });
    }
};

// ---------------------------------------------------------------------------
// Loop-shaped payout features
// ---------------------------------------------------------------------------

struct LoopFacts {
    bool parent_walk = false;
    std::optional<Ratio> fifo_multiplier;
    bool pro_rata = false;
    SourceLoc loc;
};

/// Matches amount * a / b or amount * k; returns the constant factor and the
/// non-constant base.
struct MultiplierMatch {
    Ratio factor;
    const Expr* base;
};

std::optional<MultiplierMatch> match_multiplier(const ContractDef& c, const Expr& e) {
    std::set<std::string> visiting;
    auto fold = [&](const Expr& x) { return fold_impl(c, x, 0, visiting); };
    if (const auto* div = e.as<Binary>(); div && div->op == "/") {
        auto den = fold(*div->rhs);
        if (den && *den != 0) {
            if (const auto* mul = div->lhs->as<Binary>(); mul && mul->op == "*") {
                if (auto num = fold(*mul->rhs))
                    return MultiplierMatch{*num / *den, mul->lhs.get()};
                if (auto num = fold(*mul->lhs))
                    return MultiplierMatch{*num / *den, mul->rhs.get()};
            }
        }
    }
    if (const auto* mul = e.as<Binary>(); mul && mul->op == "*") {
        if (auto k = fold(*mul->rhs)) return MultiplierMatch{*k, mul->lhs.get()};
        if (auto k = fold(*mul->lhs)) return MultiplierMatch{*k, mul->rhs.get()};
    }
    return std::nullopt;
}

bool contains_dyn_array_element(const StorageCtx& ctx, const Expr& e) {
    bool found = false;
    walk_exprs(e, [&](const Expr& x) {
        if (const auto* ix = x.as<Index>())
            if (const auto* arr = ix->base->as<Ident>())
                if (ctx.dynamic_arrays.contains(arr->name)) found = true;
    });
    return found;
}

bool contains_map_of_array_element(const StorageCtx& ctx, const Expr& e) {
    bool found = false;
    walk_exprs(e, [&](const Expr& x) {
        const auto* outer = x.as<Index>();
        if (!outer) return;
        const auto* mapVar = outer->base->as<Ident>();
        if (!mapVar || !ctx.mappings.contains(mapVar->name)) return;
        if (const auto* inner = outer->index->as<Index>())
            if (const auto* arr = inner->base->as<Ident>())
                if (ctx.dynamic_arrays.contains(arr->name)) found = true;
    });
    return found;
}

LoopFacts analyse_loop(const StorageCtx& ctx, const Stmt& loop, const Stmt& body) {
    LoopFacts facts;
    facts.loc = loc_of(loop.span);

    // locals assigned in the loop body, to resolve sent variables
    std::map<std::string, const Expr*> localDefs;
    walk_stmts(body, [&](const Stmt& s) {
        if (const auto* d = s.as<VarDeclStmt>()) {
            if (d->init) localDefs[d->name] = d->init.get();
        } else if (const auto* es = s.as<ExprStmt>()) {
            if (const auto* a = es->expr->as<Assign>(); a && a->op == "=")
                if (const auto* id = a->target->as<Ident>()) localDefs[id->name] = a->value.get();
        }
    });
    auto resolve = [&](const Expr& e) -> const Expr& {
        if (const auto* id = e.as<Ident>())
            if (auto it = localDefs.find(id->name); it != localDefs.end()) return *it->second;
        return e;
    };

    bool walkAssign = false;
    bool dividesRemainder = false;
    walk_stmts(body, [&](const Stmt& s) {
        const Assign* a = nullptr;
        if (const auto* es = s.as<ExprStmt>()) a = es->expr->as<Assign>();
        if (a && a->op == "=") {
            // cursor = Map[cursor].field steps along the parent link
            if (const auto* tgt = a->target->as<Ident>()) {
                if (const auto* m = a->value->as<Member>()) {
                    if (const auto* ix = m->base->as<Index>()) {
                        if (const auto* mapVar = ix->base->as<Ident>()) {
                            auto it = ctx.parent_field.find(mapVar->name);
                            if (it != ctx.parent_field.end() && it->second == m->member) {
                                if (const auto* idxId = ix->index->as<Ident>())
                                    if (idxId->name == tgt->name) walkAssign = true;
                            }
                        }
                    }
                }
            }
        }
    });

    std::set<std::string> visiting;
    walk_exprs(body, [&](const Expr& e) {
        if (const auto* bin = e.as<Binary>(); bin && bin->op == "/") {
            auto k = fold_impl(ctx.c, *bin->rhs, 0, visiting);
            if (k && *k >= 2 && !fold_impl(ctx.c, *bin->lhs, 0, visiting)) dividesRemainder = true;
        }
    });

    walk_exprs(body, [&](const Expr& e) {
        // sends inside the loop drive the fifo-multiplier shape
        const auto* call = e.as<Call>();
        if (call && call->args.size() == 1) {
            if (const auto* m = call->callee->as<Member>();
                m && (m->member == "send" || m->member == "transfer")) {
                const Expr& amount = resolve(*call->args[0]);
                if (auto match = match_multiplier(ctx.c, amount)) {
                    if (contains_dyn_array_element(ctx, *match->base))
                        facts.fifo_multiplier = match->factor;
                }
            }
        }
        // ledger[arr[i]] += x * invested[arr[i]] / total is the pro-rata shape
        if (const auto* a = e.as<Assign>(); a && (a->op == "+=" || a->op == "=")) {
            if (const auto* tgt = a->target->as<Index>()) {
                if (const auto* mapVar = tgt->base->as<Ident>();
                    mapVar && ctx.mappings.contains(mapVar->name)) {
                    if (const auto* div = a->value->as<Binary>(); div && div->op == "/") {
                        if (const auto* mul = div->lhs->as<Binary>(); mul && mul->op == "*") {
                            if (contains_map_of_array_element(ctx, *a->value))
                                facts.pro_rata = true;
                        }
                    }
                }
            }
        }
    });

    facts.parent_walk = walkAssign && dividesRemainder;
    return facts;
}

/// Recovers the constant fraction a fee helper applies to its first
/// parameter: "fee = amount / 2" gives 1/2, "amount * a / b" gives a/b.
std::optional<Ratio> fee_fraction(const ContractDef& c, const FunctionDef& callee) {
    if (!callee.body || callee.params.empty()) return std::nullopt;
    const std::string& param = callee.params[0].name;
    auto match_div = [&](const Expr& e) -> std::optional<Ratio> {
        const auto* div = e.as<Binary>();
        if (!div || div->op != "/") return std::nullopt;
        auto den = fold_constant(c, *div->rhs);
        if (!den || *den == 0) return std::nullopt;
        if (const auto* id = div->lhs->as<Ident>(); id && id->name == param)
            return Ratio(1) / *den;
        if (const auto* mul = div->lhs->as<Binary>(); mul && mul->op == "*") {
            if (auto num = fold_constant(c, *mul->rhs)) {
                if (const auto* lhsId = mul->lhs->as<Ident>(); lhsId && lhsId->name == param)
                    return *num / *den;
            }
            if (auto num = fold_constant(c, *mul->lhs)) {
                if (const auto* rhsId = mul->rhs->as<Ident>(); rhsId && rhsId->name == param)
                    return *num / *den;
            }
        }
        return std::nullopt;
    };
    std::optional<Ratio> result;
    walk_stmts(*callee.body, [&](const Stmt& s) {
        if (result) return;
        if (const auto* es = s.as<ExprStmt>()) {
            if (const auto* a = es->expr->as<Assign>(); a && a->op == "=")
                result = match_div(*a->value);
        } else if (const auto* d = s.as<VarDeclStmt>()) {
            if (d->init) result = match_div(*d->init);
        } else if (const auto* r = s.as<ReturnStmt>()) {
            if (r->value) result = match_div(*r->value);
        }
    });
    return result;
}

}  // namespace

std::optional<Ratio> fold_constant(const ContractDef& contract, const Expr& e) {
    std::set<std::string> visiting;
    return fold_impl(contract, e, 0, visiting);
}

std::vector<SendSite> checked_send_analysis(const SourceUnit& unit, const ContractDef& contract,
                                            const FunctionDef& function) {
    if (!function.body) return {};
    StorageCtx ctx(unit, contract);
    FunctionScan scan(ctx, function.display_name(), *function.body);
    return scan.sends;
}

ContractFingerprint extract_fingerprint(const SourceUnit& unit, const ContractDef& c) {
    StorageCtx ctx(unit, c);
    ContractFingerprint fp;
    fp.contract_name = c.name;

    // -- storage shape --------------------------------------------------------

    if (!ctx.parent_field.empty()) {
        // evidence: some Map[e].field read of the linked address field
        for (const auto& f : c.functions) {
            if (!f.body || fp.has_parent_link_mapping.present) continue;
            walk_stmts(*f.body, [&](const Stmt& s) {
                if (fp.has_parent_link_mapping.present) return;
                walk_exprs(s, [&](const Expr& e) {
                    if (fp.has_parent_link_mapping.present) return;
                    const auto* m = e.as<Member>();
                    if (!m) return;
                    const auto* ix = m->base->as<Index>();
                    if (!ix) return;
                    const auto* mapVar = ix->base->as<Ident>();
                    if (!mapVar) return;
                    auto it = ctx.parent_field.find(mapVar->name);
                    if (it != ctx.parent_field.end() && it->second == m->member)
                        fp.has_parent_link_mapping = {true, loc_of(e.span)};
                });
            });
        }
    }

    if (ctx.has_record_investor_array) {
        fp.has_investor_array = {true, loc_of(ctx.record_investor_array->span)};
    } else if (ctx.has_addr_array && ctx.has_addr_to_uint_mapping) {
        fp.has_investor_array = {true, loc_of(ctx.addr_array->span)};
    }

    std::string lastDepositorVar;
    for (const auto& f : c.functions) {
        if (!f.body || f.is_constructor) continue;
        walk_stmts(*f.body, [&](const Stmt& s) {
            const auto* es = s.as<ExprStmt>();
            if (!es) return;
            const auto* a = es->expr->as<Assign>();
            if (!a || a->op != "=") return;
            const auto* tgt = a->target->as<Ident>();
            if (!tgt || !ctx.addr_scalars.contains(tgt->name)) return;
            if (is_msg_member(*a->value, "sender") && !fp.has_single_last_depositor.present) {
                fp.has_single_last_depositor = {true, loc_of(s.span)};
                lastDepositorVar = tgt->name;
            }
        });
    }

    // -- per-function sites and entry conditions ------------------------------

    auto scan_body = [&](const std::string& name, const Block& body) {
        FunctionScan scan(ctx, name, body);
        fp.send_sites.insert(fp.send_sites.end(), scan.sends.begin(), scan.sends.end());
        fp.unguarded_arith_sites.insert(fp.unguarded_arith_sites.end(), scan.ariths.begin(),
                                        scan.ariths.end());
        fp.dynamic_index_sites.insert(fp.dynamic_index_sites.end(), scan.indices.begin(),
                                      scan.indices.end());
        return scan;
    };

    std::vector<std::pair<std::string, const Block*>> bodies;
    for (const auto& f : c.functions)
        if (f.body) bodies.push_back({f.display_name(), &*f.body});
    for (const auto& m : c.modifiers) bodies.push_back({m.name, &m.body});

    std::map<std::string, std::set<std::string>> msgLocalsByFn;
    for (auto& [name, body] : bodies) {
        FunctionScan scan = scan_body(name, *body);
        msgLocalsByFn[name] = scan.msg_locals();
    }

    // -- payout loops ----------------------------------------------------------

    for (const auto& f : c.functions) {
        if (!f.body) continue;
        walk_stmts(*f.body, [&](const Stmt& s) {
            const Stmt* body = nullptr;
            if (const auto* w = s.as<WhileStmt>()) body = w->body.get();
            else if (const auto* fo = s.as<ForStmt>()) body = fo->body.get();
            if (!body) return;
            LoopFacts facts = analyse_loop(ctx, s, *body);
            if (facts.parent_walk && !fp.payout_parent_walk.present)
                fp.payout_parent_walk = {true, facts.loc};
            if (facts.fifo_multiplier && !fp.payout_fifo_multiplier.present) {
                fp.payout_fifo_multiplier = {true, facts.loc};
                fp.fifo_multiplier = facts.fifo_multiplier;
            }
            if (facts.pro_rata && !fp.payout_pro_rata.present)
                fp.payout_pro_rata = {true, facts.loc};
        });
    }

    if (!lastDepositorVar.empty()) {
        for (const auto& site : fp.send_sites) {
            if (!site.in_loop && site.receiver == lastDepositorVar) {
                fp.payout_single_forward = {true, site.loc};
                break;
            }
        }
    }

    // -- entry-fee doubling ----------------------------------------------------

    for (const auto& f : c.functions) {
        if (!f.body || fp.entry_fee_doubling.present) continue;
        const auto& msgLocals = msgLocalsByFn[f.display_name()];
        walk_stmts(*f.body, [&](const Stmt& s) {
            if (fp.entry_fee_doubling.present) return;
            const auto* es = s.as<ExprStmt>();
            if (!es) return;
            const auto* a = es->expr->as<Assign>();
            if (!a || a->op != "=") return;
            const auto* tgt = a->target->as<Ident>();
            if (!tgt || !ctx.state_names.contains(tgt->name)) return;
            const auto* mul = a->value->as<Binary>();
            if (!mul || mul->op != "*") return;
            auto mentionsMsg = [&](const Expr& e) {
                bool found = false;
                walk_exprs(e, [&](const Expr& x) {
                    if (is_msg_member(x, "value")) found = true;
                    if (const auto* id = x.as<Ident>())
                        if (msgLocals.contains(id->name)) found = true;
                });
                return found;
            };
            for (auto [constSide, otherSide] :
                 {std::pair{mul->rhs.get(), mul->lhs.get()}, {mul->lhs.get(), mul->rhs.get()}}) {
                auto k = fold_constant(c, *constSide);
                if (k && *k == 2 && mentionsMsg(*otherSide)) {
                    fp.entry_fee_doubling = {true, loc_of(s.span)};
                    return;
                }
            }
        });
    }

    // -- minimum-deposit guard ---------------------------------------------------

    for (const auto& f : c.functions) {
        if (!f.body || fp.min_deposit_guard.present) continue;
        const auto& msgLocals = msgLocalsByFn[f.display_name()];
        auto mentionsMsg = [&](const Expr& e) {
            bool found = false;
            walk_exprs(e, [&](const Expr& x) {
                if (is_msg_member(x, "value")) found = true;
                if (const auto* id = x.as<Ident>())
                    if (msgLocals.contains(id->name)) found = true;
            });
            return found;
        };
        walk_stmts(*f.body, [&](const Stmt& s) {
            if (fp.min_deposit_guard.present) return;
            const Expr* cond = nullptr;
            if (const auto* i = s.as<IfStmt>()) cond = i->cond.get();
            else if (const auto* w = s.as<WhileStmt>()) cond = w->cond.get();
            else if (const auto* es = s.as<ExprStmt>()) {
                if (const auto* call = es->expr->as<Call>())
                    if (const auto* id = call->callee->as<Ident>();
                        id && id->name == "require" && !call->args.empty())
                        cond = call->args[0].get();
            }
            if (!cond) return;
            walk_exprs(*cond, [&](const Expr& x) {
                if (fp.min_deposit_guard.present) return;
                const auto* bin = x.as<Binary>();
                if (!bin || !is_ordering_op(bin->op)) return;
                for (auto [valueSide, constSide] :
                     {std::pair{bin->lhs.get(), bin->rhs.get()},
                      {bin->rhs.get(), bin->lhs.get()}}) {
                    if (!mentionsMsg(*valueSide)) continue;
                    auto k = fold_constant(c, *constSide);
                    if (!k || *k < 0) continue;
                    fp.min_deposit_guard = {true, loc_of(x.span)};
                    if (boost::multiprecision::denominator(*k) == 1)
                        fp.min_deposit_wei = Wei(boost::multiprecision::numerator(*k));
                    return;
                }
            });
        });
    }

    // -- owner fee -----------------------------------------------------------------

    for (const auto& f : c.functions) {
        if (!f.body || fp.owner_fee.present) continue;
        const auto& msgLocals = msgLocalsByFn[f.display_name()];
        walk_stmts(*f.body, [&](const Stmt& s) {
            if (fp.owner_fee.present) return;
            walk_exprs(s, [&](const Expr& e) {
                if (fp.owner_fee.present) return;
                const auto* call = e.as<Call>();
                if (!call || call->args.empty()) return;
                const auto* id = call->callee->as<Ident>();
                if (!id) return;
                if (lowercase(id->name).find("fee") == std::string::npos) return;
                const FunctionDef* callee = c.function(id->name);
                if (!callee) return;
                bool msgArg = false;
                walk_exprs(*call->args[0], [&](const Expr& x) {
                    if (is_msg_member(x, "value")) msgArg = true;
                    if (const auto* arg = x.as<Ident>())
                        if (msgLocals.contains(arg->name)) msgArg = true;
                });
                if (!msgArg) return;
                fp.owner_fee = {true, loc_of(e.span)};
                fp.owner_fee_fraction = fee_fraction(c, *callee);
            });
        });
    }

    return fp;
}

}  // namespace ponzi
