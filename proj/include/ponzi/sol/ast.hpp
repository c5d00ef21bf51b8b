// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/money.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ponzi::sol {

/// Half-open byte range into the original source, plus the 1-based position
/// of its first byte. Spans of child nodes always nest inside their parent's.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;

    bool contains(const Span& other) const { return begin <= other.begin && other.end <= end; }
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct NumberLit {
    Ratio value;             // unit-scaled: "500 finney" holds 5e17
    std::string text;        // raw literal text without the unit
    std::string unit;        // "" when no unit suffix
};

struct BoolLit {
    bool value = false;
};

struct StringLit {
    std::string text;  // verbatim, including quotes
};

struct Ident {
    std::string name;
};

struct Unary {
    std::string op;
    bool prefix = true;
    ExprPtr operand;
};

struct Binary {
    std::string op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Assign {
    std::string op;  // "=", "+=", "-=", "*=", "/=", "%="
    ExprPtr target;
    ExprPtr value;
};

struct Conditional {
    ExprPtr cond;
    ExprPtr then_expr;
    ExprPtr else_expr;
};

struct Index {
    ExprPtr base;
    ExprPtr index;
};

struct Member {
    ExprPtr base;
    std::string member;
};

struct Call {
    ExprPtr callee;
    std::vector<ExprPtr> args;
};

struct Tuple {
    std::vector<ExprPtr> elems;
};

struct Expr {
    Span span;
    std::variant<NumberLit, BoolLit, StringLit, Ident, Unary, Binary, Assign,
                 Conditional, Index, Member, Call, Tuple>
        node;

    template <typename T> const T* as() const { return std::get_if<T>(&node); }
    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct TypeName {
    enum class Kind { Elementary, Mapping, Array, UserDefined };
    Kind kind = Kind::Elementary;
    std::string text;                 // rendered form, e.g. "mapping(address=>uint)"
    std::string name;                 // elementary or user-defined base name
    std::unique_ptr<TypeName> key;    // mapping key
    std::unique_ptr<TypeName> value;  // mapping value / array element
    std::optional<std::string> length;  // fixed array length text, if any

    bool is_address() const { return kind == Kind::Elementary && name == "address"; }
    bool is_uint_like() const {
        return kind == Kind::Elementary && (name.starts_with("uint") || name.starts_with("int"));
    }
    bool is_dynamic_array() const { return kind == Kind::Array && !length; }
};

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
    std::vector<StmtPtr> stmts;
};

struct IfStmt {
    ExprPtr cond;
    StmtPtr then_branch;
    StmtPtr else_branch;  // may be null
};

struct WhileStmt {
    ExprPtr cond;
    StmtPtr body;
};

struct ForStmt {
    StmtPtr init;   // VarDeclStmt or ExprStmt, may be null
    ExprPtr cond;   // may be null
    ExprPtr post;   // may be null
    StmtPtr body;
};

struct ReturnStmt {
    ExprPtr value;  // may be null
};

struct ThrowStmt {};
struct BreakStmt {};
struct ContinueStmt {};

struct VarDeclStmt {
    TypeName type;
    std::string name;
    ExprPtr init;  // may be null
};

struct ExprStmt {
    ExprPtr expr;
};

struct AssemblyStmt {
    std::string text;  // verbatim block, braces included
};

/// A statement the parser could not interpret; the balanced source text is
/// preserved so later passes still see the file's full extent.
struct OpaqueStmt {
    std::string text;
};

struct Stmt {
    Span span;
    std::variant<Block, IfStmt, WhileStmt, ForStmt, ReturnStmt, ThrowStmt, BreakStmt,
                 ContinueStmt, VarDeclStmt, ExprStmt, AssemblyStmt, OpaqueStmt>
        node;

    template <typename T> const T* as() const { return std::get_if<T>(&node); }
    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
};

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

struct Param {
    TypeName type;
    std::string name;  // may be empty
    Span span;
};

struct StateVarDef {
    TypeName type;
    std::string name;
    std::string visibility;  // "", "public", "private", "internal"
    bool constant = false;
    ExprPtr init;  // may be null
    Span span;
};

struct RecordDef {  // struct declaration
    std::string name;
    std::vector<Param> fields;
    Span span;

    const Param* field(const std::string& fieldName) const {
        for (const auto& f : fields)
            if (f.name == fieldName) return &f;
        return nullptr;
    }
};

struct EventDef {
    std::string name;
    std::vector<Param> params;
    Span span;
};

struct ModifierInvocation {
    std::string name;
    std::vector<ExprPtr> args;
    Span span;
};

struct FunctionDef {
    std::string name;  // empty for the fallback function
    bool is_constructor = false;
    bool is_fallback = false;
    bool payable = false;
    std::string visibility;
    std::vector<std::string> mutability;  // constant/view/pure keywords seen
    std::vector<Param> params;
    std::vector<Param> returns;
    std::vector<ModifierInvocation> invoked_modifiers;
    std::optional<Block> body;  // nullopt for declarations ending in ';'
    Span span;

    std::string display_name() const {
        if (is_fallback) return "<fallback>";
        return name;
    }
};

struct ModifierDef {
    std::string name;
    std::vector<Param> params;
    Block body;
    Span span;
};

struct ContractDef {
    std::string kind;  // contract | library | interface
    std::string name;
    std::vector<std::string> bases;
    std::vector<StateVarDef> state_vars;
    std::vector<RecordDef> records;
    std::vector<EventDef> events;
    std::vector<FunctionDef> functions;
    std::vector<ModifierDef> modifiers;
    std::vector<std::string> opaque_members;  // unparsed member text, preserved
    Span span;

    const StateVarDef* state_var(const std::string& varName) const {
        for (const auto& v : state_vars)
            if (v.name == varName) return &v;
        return nullptr;
    }
    const RecordDef* record(const std::string& recName) const {
        for (const auto& r : records)
            if (r.name == recName) return &r;
        return nullptr;
    }
    const FunctionDef* function(const std::string& fnName) const {
        for (const auto& f : functions)
            if (f.name == fnName) return &f;
        return nullptr;
    }
};

struct SourceUnit {
    std::shared_ptr<const std::string> source;  // original text, owned
    std::vector<std::string> pragmas;           // verbatim pragma directives
    std::vector<std::string> imports;           // verbatim import directives
    std::vector<ContractDef> contracts;
    Span span;
};

// ---------------------------------------------------------------------------
// Span and traversal utilities
// ---------------------------------------------------------------------------

/// Verbatim source slice for a node's span. The span must lie within the
/// unit's source.
std::string_view span_text(const SourceUnit& unit, const Span& span);

/// Direct children, used to build recursive walks.
void for_each_child(const Expr& e, const std::function<void(const Expr&)>& fn);
void for_each_child(const Stmt& s, const std::function<void(const Stmt&)>& stmtFn,
                    const std::function<void(const Expr&)>& exprFn);

/// Preorder traversal over a whole subtree.
void walk_exprs(const Expr& e, const std::function<void(const Expr&)>& fn);
void walk_exprs(const Stmt& s, const std::function<void(const Expr&)>& fn);
void walk_stmts(const Stmt& s, const std::function<void(const Stmt&)>& fn);
void walk_stmts(const Block& b, const std::function<void(const Stmt&)>& fn);

/// Canonical structural rendering, used for determinism checks and debugging.
std::string dump(const SourceUnit& unit);
std::string dump(const Expr& e);
std::string dump(const Stmt& s);

}  // namespace ponzi::sol
