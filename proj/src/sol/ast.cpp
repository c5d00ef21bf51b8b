// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/sol/ast.hpp"

#include <cassert>
#include <sstream>

namespace ponzi::sol {

std::string_view span_text(const SourceUnit& unit, const Span& span) {
    assert(unit.source);
    assert(span.end >= span.begin && span.end <= unit.source->size());
    return std::string_view(*unit.source).substr(span.begin, span.end - span.begin);
}

void for_each_child(const Expr& e, const std::function<void(const Expr&)>& fn) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Unary>) {
                if (n.operand) fn(*n.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                if (n.lhs) fn(*n.lhs);
                if (n.rhs) fn(*n.rhs);
            } else if constexpr (std::is_same_v<T, Assign>) {
                if (n.target) fn(*n.target);
                if (n.value) fn(*n.value);
            } else if constexpr (std::is_same_v<T, Conditional>) {
                if (n.cond) fn(*n.cond);
                if (n.then_expr) fn(*n.then_expr);
                if (n.else_expr) fn(*n.else_expr);
            } else if constexpr (std::is_same_v<T, Index>) {
                if (n.base) fn(*n.base);
                if (n.index) fn(*n.index);
            } else if constexpr (std::is_same_v<T, Member>) {
                if (n.base) fn(*n.base);
            } else if constexpr (std::is_same_v<T, Call>) {
                if (n.callee) fn(*n.callee);
                for (const auto& a : n.args) fn(*a);
            } else if constexpr (std::is_same_v<T, Tuple>) {
                for (const auto& el : n.elems) fn(*el);
            }
        },
        e.node);
}

void for_each_child(const Stmt& s, const std::function<void(const Stmt&)>& stmtFn,
                    const std::function<void(const Expr&)>& exprFn) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Block>) {
                for (const auto& st : n.stmts) stmtFn(*st);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                if (n.cond) exprFn(*n.cond);
                if (n.then_branch) stmtFn(*n.then_branch);
                if (n.else_branch) stmtFn(*n.else_branch);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                if (n.cond) exprFn(*n.cond);
                if (n.body) stmtFn(*n.body);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                if (n.init) stmtFn(*n.init);
                if (n.cond) exprFn(*n.cond);
                if (n.post) exprFn(*n.post);
                if (n.body) stmtFn(*n.body);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                if (n.value) exprFn(*n.value);
            } else if constexpr (std::is_same_v<T, VarDeclStmt>) {
                if (n.init) exprFn(*n.init);
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                if (n.expr) exprFn(*n.expr);
            }
        },
        s.node);
}

void walk_exprs(const Expr& e, const std::function<void(const Expr&)>& fn) {
    fn(e);
    for_each_child(e, [&](const Expr& child) { walk_exprs(child, fn); });
}

void walk_exprs(const Stmt& s, const std::function<void(const Expr&)>& fn) {
    for_each_child(
        s, [&](const Stmt& child) { walk_exprs(child, fn); },
        [&](const Expr& e) { walk_exprs(e, fn); });
}

void walk_stmts(const Stmt& s, const std::function<void(const Stmt&)>& fn) {
    fn(s);
    for_each_child(
        s, [&](const Stmt& child) { walk_stmts(child, fn); },
        [](const Expr&) {});
}

void walk_stmts(const Block& b, const std::function<void(const Stmt&)>& fn) {
    for (const auto& st : b.stmts) walk_stmts(*st, fn);
}

// ---------------------------------------------------------------------------
// Canonical dump
// ---------------------------------------------------------------------------

namespace {

void dump_expr(std::ostringstream& os, const Expr& e);
void dump_stmt(std::ostringstream& os, const Stmt& s);

void dump_expr(std::ostringstream& os, const Expr& e) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                os << "(num " << n.value << ")";
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                os << (n.value ? "(true)" : "(false)");
            } else if constexpr (std::is_same_v<T, StringLit>) {
                os << "(str " << n.text << ")";
            } else if constexpr (std::is_same_v<T, Ident>) {
                os << n.name;
            } else if constexpr (std::is_same_v<T, Unary>) {
                os << "(" << (n.prefix ? "pre" : "post") << n.op << " ";
                dump_expr(os, *n.operand);
                os << ")";
            } else if constexpr (std::is_same_v<T, Binary>) {
                os << "(" << n.op << " ";
                dump_expr(os, *n.lhs);
                os << " ";
                dump_expr(os, *n.rhs);
                os << ")";
            } else if constexpr (std::is_same_v<T, Assign>) {
                os << "(" << n.op << " ";
                dump_expr(os, *n.target);
                os << " ";
                dump_expr(os, *n.value);
                os << ")";
            } else if constexpr (std::is_same_v<T, Conditional>) {
                os << "(?: ";
                dump_expr(os, *n.cond);
                os << " ";
                dump_expr(os, *n.then_expr);
                os << " ";
                dump_expr(os, *n.else_expr);
                os << ")";
            } else if constexpr (std::is_same_v<T, Index>) {
                os << "(idx ";
                dump_expr(os, *n.base);
                os << " ";
                dump_expr(os, *n.index);
                os << ")";
            } else if constexpr (std::is_same_v<T, Member>) {
                os << "(. ";
                dump_expr(os, *n.base);
                os << " " << n.member << ")";
            } else if constexpr (std::is_same_v<T, Call>) {
                os << "(call ";
                dump_expr(os, *n.callee);
                for (const auto& a : n.args) {
                    os << " ";
                    dump_expr(os, *a);
                }
                os << ")";
            } else if constexpr (std::is_same_v<T, Tuple>) {
                os << "(tuple";
                for (const auto& el : n.elems) {
                    os << " ";
                    dump_expr(os, *el);
                }
                os << ")";
            }
        },
        e.node);
}

void dump_stmt(std::ostringstream& os, const Stmt& s) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Block>) {
                os << "{";
                for (const auto& st : n.stmts) {
                    dump_stmt(os, *st);
                    os << ";";
                }
                os << "}";
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                os << "(if ";
                dump_expr(os, *n.cond);
                os << " ";
                dump_stmt(os, *n.then_branch);
                if (n.else_branch) {
                    os << " else ";
                    dump_stmt(os, *n.else_branch);
                }
                os << ")";
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                os << "(while ";
                dump_expr(os, *n.cond);
                os << " ";
                dump_stmt(os, *n.body);
                os << ")";
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                os << "(for ";
                if (n.init) dump_stmt(os, *n.init);
                os << "; ";
                if (n.cond) dump_expr(os, *n.cond);
                os << "; ";
                if (n.post) dump_expr(os, *n.post);
                os << " ";
                dump_stmt(os, *n.body);
                os << ")";
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                os << "(return";
                if (n.value) {
                    os << " ";
                    dump_expr(os, *n.value);
                }
                os << ")";
            } else if constexpr (std::is_same_v<T, ThrowStmt>) {
                os << "(throw)";
            } else if constexpr (std::is_same_v<T, BreakStmt>) {
                os << "(break)";
            } else if constexpr (std::is_same_v<T, ContinueStmt>) {
                os << "(continue)";
            } else if constexpr (std::is_same_v<T, VarDeclStmt>) {
                os << "(decl " << n.type.text << " " << n.name;
                if (n.init) {
                    os << " = ";
                    dump_expr(os, *n.init);
                }
                os << ")";
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                dump_expr(os, *n.expr);
            } else if constexpr (std::is_same_v<T, AssemblyStmt>) {
                os << "(asm " << n.text << ")";
            } else if constexpr (std::is_same_v<T, OpaqueStmt>) {
                os << "(opaque " << n.text << ")";
            }
        },
        s.node);
}

}  // namespace

std::string dump(const Expr& e) {
    std::ostringstream os;
    dump_expr(os, e);
    return os.str();
}

std::string dump(const Stmt& s) {
    std::ostringstream os;
    dump_stmt(os, s);
    return os.str();
}

std::string dump(const SourceUnit& unit) {
    std::ostringstream os;
    for (const auto& p : unit.pragmas) os << "(pragma " << p << ")\n";
    for (const auto& c : unit.contracts) {
        os << "(" << c.kind << " " << c.name;
        for (const auto& b : c.bases) os << " :" << b;
        os << "\n";
        for (const auto& r : c.records) {
            os << "  (record " << r.name;
            for (const auto& f : r.fields) os << " (" << f.type.text << " " << f.name << ")";
            os << ")\n";
        }
        for (const auto& v : c.state_vars) {
            os << "  (state " << v.type.text << " " << v.name;
            if (v.init) os << " = " << dump(*v.init);
            os << ")\n";
        }
        for (const auto& ev : c.events) os << "  (event " << ev.name << ")\n";
        for (const auto& m : c.modifiers) {
            os << "  (modifier " << m.name << " ";
            Stmt body{m.span, Block{}};
            std::ostringstream bs;
            for (const auto& st : m.body.stmts) {
                dump_stmt(bs, *st);
                bs << ";";
            }
            os << "{" << bs.str() << "})\n";
        }
        for (const auto& f : c.functions) {
            os << "  (function " << f.display_name();
            if (f.is_constructor) os << " ctor";
            if (f.payable) os << " payable";
            for (const auto& p : f.params) os << " (" << p.type.text << " " << p.name << ")";
            if (f.body) {
                std::ostringstream bs;
                for (const auto& st : f.body->stmts) {
                    dump_stmt(bs, *st);
                    bs << ";";
                }
                os << " {" << bs.str() << "}";
            }
            os << ")\n";
        }
        for (const auto& om : c.opaque_members) os << "  (opaque-member " << om << ")\n";
        os << ")\n";
    }
    return os.str();
}

}  // namespace ponzi::sol
