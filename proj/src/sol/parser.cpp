// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/sol/parser.hpp"

#include "ponzi/sol/lexer.hpp"

#include <cassert>
#include <utility>

namespace ponzi::sol {

namespace {

bool is_elementary_type_word(std::string_view w) {
    if (w == "address" || w == "bool" || w == "string" || w == "var" || w == "byte") return true;
    auto sized = [](std::string_view base) {
        return std::all_of(base.begin(), base.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (w.starts_with("uint")) return sized(w.substr(4));
    if (w.starts_with("int")) return sized(w.substr(3));
    if (w.starts_with("bytes")) return sized(w.substr(5));
    return false;
}

Ratio number_value(const std::string& text) {
    if (text.size() > 1 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
        return Ratio(Wei(text));
    std::string mantissa = text;
    long long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        mantissa = text.substr(0, e);
        exp10 = std::stoll(text.substr(e + 1));
    }
    std::string whole = mantissa, frac;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        whole = mantissa.substr(0, dot);
        frac = mantissa.substr(dot + 1);
    }
    if (whole.empty()) whole = "0";
    Wei scale(1);
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Ratio value(Wei(whole) * scale + (frac.empty() ? Wei(0) : Wei(frac)), scale);
    for (long long i = 0; i < exp10; ++i) value *= 10;
    for (long long i = 0; i > exp10; --i) value /= 10;
    return value;
}

class Parser {
public:
    explicit Parser(std::string source)
        : source_(std::make_shared<const std::string>(std::move(source))),
          tokens_(tokenize(*source_)) {}

    SourceUnit run() {
        SourceUnit unit;
        unit.source = source_;
        unit.span = {0, source_->size(), 1, 1};
        while (!at_eof()) {
            if (at_kw("pragma")) {
                unit.pragmas.push_back(directive_text());
            } else if (at_kw("import")) {
                unit.imports.push_back(directive_text());
            } else if (at_kw("contract") || at_kw("library") || at_kw("interface")) {
                unit.contracts.push_back(contract());
            } else {
                fail({"pragma", "import", "contract", "library", "interface"});
            }
        }
        return unit;
    }

private:
    std::shared_ptr<const std::string> source_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    // -- token helpers ------------------------------------------------------

    const Token& cur() const { return tokens_[pos_]; }
    const Token& prev() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
    const Token& lookahead(std::size_t n) const {
        return tokens_[std::min(pos_ + n, tokens_.size() - 1)];
    }
    bool at_eof() const { return cur().kind == TokenKind::EndOfFile; }
    bool at(TokenKind k, std::string_view text) const {
        return cur().kind == k && cur().text == text;
    }
    bool at_kw(std::string_view t) const { return at(TokenKind::Keyword, t); }
    bool at_op(std::string_view t) const { return at(TokenKind::Operator, t); }
    bool at_punct(char c) const {
        return cur().kind == TokenKind::Punct && cur().text.size() == 1 && cur().text[0] == c;
    }
    const Token& eat() { return tokens_[pos_++]; }
    bool accept_kw(std::string_view t) { return at_kw(t) ? (eat(), true) : false; }
    bool accept_op(std::string_view t) { return at_op(t) ? (eat(), true) : false; }
    bool accept_punct(char c) { return at_punct(c) ? (eat(), true) : false; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string what = "parse error at " + std::to_string(cur().line) + ":" +
                           std::to_string(cur().column) + ": unexpected '" +
                           (at_eof() ? "<eof>" : cur().text) + "', expected ";
        for (std::size_t i = 0; i < expected.size(); ++i)
            what += (i ? " | " : "") + expected[i];
        throw ParseError(cur().line, cur().column, std::move(expected), what);
    }
    void expect_punct(char c) {
        if (!accept_punct(c)) fail({std::string(1, c)});
    }
    void expect_op(std::string_view t) {
        if (!accept_op(t)) fail({std::string(t)});
    }
    void expect_kw(std::string_view t) {
        if (!accept_kw(t)) fail({std::string(t)});
    }
    std::string expect_ident() {
        if (cur().kind != TokenKind::Identifier) fail({"identifier"});
        return eat().text;
    }

    static std::size_t token_end(const Token& t) { return t.offset + t.text.size(); }
    Span span_from(std::size_t startTok) const {
        const Token& s = tokens_[startTok];
        return Span{s.offset, token_end(prev()), s.line, s.column};
    }
    std::string text_from(std::size_t startTok) const {
        Span sp = span_from(startTok);
        return source_->substr(sp.begin, sp.end - sp.begin);
    }

    std::string directive_text() {
        std::size_t start = pos_;
        while (!at_eof() && !at_punct(';')) eat();
        expect_punct(';');
        return text_from(start);
    }

    // -- types --------------------------------------------------------------

    bool at_type_start() const {
        return at_kw("mapping") || at_kw("var") ||
               (cur().kind == TokenKind::Keyword && is_elementary_type_word(cur().text));
    }

    TypeName type_name() {
        TypeName t;
        if (accept_kw("mapping")) {
            t.kind = TypeName::Kind::Mapping;
            expect_punct('(');
            t.key = std::make_unique<TypeName>(type_name());
            expect_op("=>");
            t.value = std::make_unique<TypeName>(type_name());
            expect_punct(')');
            t.text = "mapping(" + t.key->text + "=>" + t.value->text + ")";
        } else if (cur().kind == TokenKind::Keyword && is_elementary_type_word(cur().text)) {
            t.kind = TypeName::Kind::Elementary;
            t.name = eat().text;
            t.text = t.name;
        } else if (cur().kind == TokenKind::Identifier) {
            t.kind = TypeName::Kind::UserDefined;
            t.name = eat().text;
            t.text = t.name;
        } else {
            fail({"type name"});
        }
        while (at_punct('[')) {
            eat();
            TypeName arr;
            arr.kind = TypeName::Kind::Array;
            if (!at_punct(']')) {
                std::size_t start = pos_;
                expression();
                arr.length = text_from(start);
            }
            expect_punct(']');
            arr.text = t.text + "[" + (arr.length ? *arr.length : "") + "]";
            arr.value = std::make_unique<TypeName>(std::move(t));
            t = std::move(arr);
        }
        return t;
    }

    // -- declarations -------------------------------------------------------

    ContractDef contract() {
        std::size_t start = pos_;
        ContractDef c;
        c.kind = eat().text;  // contract | library | interface
        c.name = expect_ident();
        if (accept_kw("is")) {
            do {
                c.bases.push_back(expect_ident());
                if (accept_punct('(')) skip_balanced_until(')');
            } while (accept_punct(','));
        }
        expect_punct('{');
        while (!at_punct('}')) {
            if (at_eof()) fail({"}", "contract member"});
            std::size_t memberStart = pos_;
            try {
                member(c);
            } catch (const ParseError&) {
                pos_ = memberStart;
                c.opaque_members.push_back(recover_balanced());
            }
        }
        eat();  // '}'
        c.span = span_from(start);
        return c;
    }

    void member(ContractDef& c) {
        if (at_kw("struct")) {
            c.records.push_back(record_def());
        } else if (at_kw("event")) {
            c.events.push_back(event_def());
        } else if (at_kw("modifier")) {
            c.modifiers.push_back(modifier_def());
        } else if (at_kw("function") || at_kw("constructor")) {
            c.functions.push_back(function_def(c.name));
        } else if (at_kw("using") || at_kw("enum")) {
            c.opaque_members.push_back(recover_balanced());
        } else if (at_type_start() || cur().kind == TokenKind::Identifier) {
            c.state_vars.push_back(state_var());
        } else {
            fail({"contract member"});
        }
    }

    RecordDef record_def() {
        std::size_t start = pos_;
        expect_kw("struct");
        RecordDef r;
        r.name = expect_ident();
        expect_punct('{');
        while (!at_punct('}')) {
            std::size_t fieldStart = pos_;
            Param f;
            f.type = type_name();
            f.name = expect_ident();
            expect_punct(';');
            f.span = span_from(fieldStart);
            r.fields.push_back(std::move(f));
        }
        eat();
        r.span = span_from(start);
        return r;
    }

    EventDef event_def() {
        std::size_t start = pos_;
        expect_kw("event");
        EventDef ev;
        ev.name = expect_ident();
        expect_punct('(');
        ev.params = params_until(')');
        accept_kw("anonymous");
        expect_punct(';');
        ev.span = span_from(start);
        return ev;
    }

    ModifierDef modifier_def() {
        std::size_t start = pos_;
        expect_kw("modifier");
        ModifierDef m;
        m.name = expect_ident();
        if (accept_punct('(')) m.params = params_until(')');
        Stmt body = block();
        m.body = std::move(std::get<Block>(body.node));
        m.span = span_from(start);
        return m;
    }

    std::vector<Param> params_until(char closer) {
        std::vector<Param> ps;
        if (accept_punct(closer)) return ps;
        do {
            std::size_t start = pos_;
            Param p;
            p.type = type_name();
            while (at_kw("indexed") || at_kw("memory") || at_kw("storage") || at_kw("calldata"))
                eat();
            if (cur().kind == TokenKind::Identifier) p.name = eat().text;
            p.span = span_from(start);
            ps.push_back(std::move(p));
        } while (accept_punct(','));
        expect_punct(closer);
        return ps;
    }

    FunctionDef function_def(const std::string& contractName) {
        std::size_t start = pos_;
        FunctionDef f;
        if (accept_kw("constructor")) {
            f.is_constructor = true;
        } else {
            expect_kw("function");
            if (cur().kind == TokenKind::Identifier) {
                f.name = eat().text;
                f.is_constructor = (f.name == contractName);
            } else {
                f.is_fallback = true;
            }
        }
        expect_punct('(');
        f.params = params_until(')');
        for (;;) {
            if (at_kw("public") || at_kw("private") || at_kw("internal") || at_kw("external")) {
                f.visibility = eat().text;
            } else if (accept_kw("payable")) {
                f.payable = true;
            } else if (at_kw("constant") || at_kw("view") || at_kw("pure")) {
                f.mutability.push_back(eat().text);
            } else if (accept_kw("returns")) {
                expect_punct('(');
                f.returns = params_until(')');
            } else if (cur().kind == TokenKind::Identifier) {
                std::size_t mstart = pos_;
                ModifierInvocation inv;
                inv.name = eat().text;
                if (accept_punct('(')) {
                    if (!at_punct(')')) {
                        do {
                            inv.args.push_back(std::make_unique<Expr>(expression()));
                        } while (accept_punct(','));
                    }
                    expect_punct(')');
                }
                inv.span = span_from(mstart);
                f.invoked_modifiers.push_back(std::move(inv));
            } else {
                break;
            }
        }
        if (accept_punct(';')) {
            f.span = span_from(start);
            return f;
        }
        Stmt body = block();
        f.body = std::move(std::get<Block>(body.node));
        f.span = span_from(start);
        return f;
    }

    StateVarDef state_var() {
        std::size_t start = pos_;
        StateVarDef v;
        v.type = type_name();
        for (;;) {
            if (at_kw("public") || at_kw("private") || at_kw("internal")) v.visibility = eat().text;
            else if (accept_kw("constant")) v.constant = true;
            else break;
        }
        v.name = expect_ident();
        if (accept_op("=")) v.init = std::make_unique<Expr>(expression());
        expect_punct(';');
        v.span = span_from(start);
        return v;
    }

    // -- statements ---------------------------------------------------------

    Stmt block() {
        std::size_t start = pos_;
        expect_punct('{');
        Block b;
        while (!at_punct('}')) {
            if (at_eof()) fail({"}", "statement"});
            std::size_t stmtStart = pos_;
            try {
                b.stmts.push_back(std::make_unique<Stmt>(statement()));
            } catch (const ParseError&) {
                pos_ = stmtStart;
                std::string text = recover_balanced();
                Span sp{tokens_[stmtStart].offset, token_end(prev()), tokens_[stmtStart].line,
                        tokens_[stmtStart].column};
                b.stmts.push_back(std::make_unique<Stmt>(Stmt{sp, OpaqueStmt{std::move(text)}}));
            }
        }
        eat();
        return Stmt{span_from(start), std::move(b)};
    }

    Stmt statement() {
        std::size_t start = pos_;
        if (at_punct('{')) return block();
        if (accept_kw("if")) {
            IfStmt s;
            expect_punct('(');
            s.cond = std::make_unique<Expr>(expression());
            expect_punct(')');
            s.then_branch = std::make_unique<Stmt>(statement());
            if (accept_kw("else")) s.else_branch = std::make_unique<Stmt>(statement());
            return Stmt{span_from(start), std::move(s)};
        }
        if (accept_kw("while")) {
            WhileStmt s;
            expect_punct('(');
            s.cond = std::make_unique<Expr>(expression());
            expect_punct(')');
            s.body = std::make_unique<Stmt>(statement());
            return Stmt{span_from(start), std::move(s)};
        }
        if (accept_kw("for")) {
            ForStmt s;
            expect_punct('(');
            if (!accept_punct(';')) {
                if (at_type_start() || looks_like_var_decl())
                    s.init = std::make_unique<Stmt>(var_decl_statement());
                else {
                    std::size_t istart = pos_;
                    auto e = std::make_unique<Expr>(expression());
                    expect_punct(';');
                    s.init = std::make_unique<Stmt>(
                        Stmt{span_from(istart), ExprStmt{std::move(e)}});
                }
            }
            if (!at_punct(';')) s.cond = std::make_unique<Expr>(expression());
            expect_punct(';');
            if (!at_punct(')')) s.post = std::make_unique<Expr>(expression());
            expect_punct(')');
            s.body = std::make_unique<Stmt>(statement());
            return Stmt{span_from(start), std::move(s)};
        }
        if (accept_kw("return")) {
            ReturnStmt s;
            if (!at_punct(';')) s.value = std::make_unique<Expr>(expression());
            expect_punct(';');
            return Stmt{span_from(start), std::move(s)};
        }
        if (accept_kw("throw")) {
            expect_punct(';');
            return Stmt{span_from(start), ThrowStmt{}};
        }
        if (accept_kw("break")) {
            expect_punct(';');
            return Stmt{span_from(start), BreakStmt{}};
        }
        if (accept_kw("continue")) {
            expect_punct(';');
            return Stmt{span_from(start), ContinueStmt{}};
        }
        if (accept_kw("assembly")) {
            if (cur().kind == TokenKind::String) eat();  // dialect tag
            std::size_t bodyStart = pos_;
            expect_punct('{');
            int depth = 1;
            while (depth > 0) {
                if (at_eof()) fail({"}"});
                if (at_punct('{')) ++depth;
                else if (at_punct('}')) --depth;
                eat();
            }
            return Stmt{span_from(start), AssemblyStmt{text_from(bodyStart)}};
        }
        if (accept_kw("emit")) {
            auto e = std::make_unique<Expr>(expression());
            expect_punct(';');
            return Stmt{span_from(start), ExprStmt{std::move(e)}};
        }
        if (at_type_start() || looks_like_var_decl()) return var_decl_statement();
        auto e = std::make_unique<Expr>(expression());
        expect_punct(';');
        return Stmt{span_from(start), ExprStmt{std::move(e)}};
    }

    /// Lookahead for "UserType name = ..." / "UserType name;" declarations.
    bool looks_like_var_decl() const {
        if (cur().kind != TokenKind::Identifier) return false;
        std::size_t n = 1;
        while (lookahead(n).kind == TokenKind::Punct && lookahead(n).text == "[") {
            std::size_t m = n + 1;
            int depth = 1;
            while (depth > 0) {
                const Token& t = lookahead(m);
                if (t.kind == TokenKind::EndOfFile) return false;
                if (t.kind == TokenKind::Punct && t.text == "[") ++depth;
                if (t.kind == TokenKind::Punct && t.text == "]") --depth;
                ++m;
            }
            n = m;
        }
        if (lookahead(n).kind == TokenKind::Keyword &&
            (lookahead(n).text == "memory" || lookahead(n).text == "storage"))
            ++n;
        if (lookahead(n).kind != TokenKind::Identifier) return false;
        const Token& after = lookahead(n + 1);
        return (after.kind == TokenKind::Operator && after.text == "=") ||
               (after.kind == TokenKind::Punct && (after.text == ";" || after.text == ","));
    }

    Stmt var_decl_statement() {
        std::size_t start = pos_;
        VarDeclStmt s;
        s.type = type_name();
        while (at_kw("memory") || at_kw("storage") || at_kw("calldata")) eat();
        s.name = expect_ident();
        if (accept_op("=")) s.init = std::make_unique<Expr>(expression());
        expect_punct(';');
        return Stmt{span_from(start), std::move(s)};
    }

    // -- expressions --------------------------------------------------------

    Expr expression() { return assignment(); }

    Expr assignment() {
        Expr lhs = conditional();
        static const std::string_view ops[] = {"=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^="};
        for (std::string_view op : ops) {
            if (at_op(op)) {
                eat();
                Assign a;
                a.op = op;
                Span sp = lhs.span;
                a.target = std::make_unique<Expr>(std::move(lhs));
                a.value = std::make_unique<Expr>(assignment());
                sp.end = a.value->span.end;
                return Expr{sp, std::move(a)};
            }
        }
        return lhs;
    }

    Expr conditional() {
        Expr cond = binary(0);
        if (!at_op("?")) return cond;
        eat();
        Conditional c;
        Span sp = cond.span;
        c.cond = std::make_unique<Expr>(std::move(cond));
        c.then_expr = std::make_unique<Expr>(expression());
        expect_op(":");
        c.else_expr = std::make_unique<Expr>(expression());
        sp.end = c.else_expr->span.end;
        return Expr{sp, std::move(c)};
    }

    // Precedence levels, loosest first.
    static constexpr int kLevels = 9;
    static const std::vector<std::string_view>& level_ops(int level) {
        static const std::vector<std::string_view> table[kLevels] = {
            {"||"}, {"&&"}, {"==", "!="}, {"<", ">", "<=", ">="},
            {"|"}, {"^"}, {"&", "<<", ">>"}, {"+", "-"}, {"*", "/", "%"},
        };
        return table[level];
    }

    Expr binary(int level) {
        if (level >= kLevels) return unary();
        Expr lhs = binary(level + 1);
        for (;;) {
            std::string_view matched;
            for (std::string_view op : level_ops(level))
                if (at_op(op)) { matched = op; break; }
            if (matched.empty()) return lhs;
            eat();
            Binary b;
            b.op = matched;
            Span sp = lhs.span;
            b.lhs = std::make_unique<Expr>(std::move(lhs));
            b.rhs = std::make_unique<Expr>(binary(level + 1));
            sp.end = b.rhs->span.end;
            lhs = Expr{sp, std::move(b)};
        }
    }

    Expr unary() {
        std::size_t start = pos_;
        static const std::string_view prefixOps[] = {"!", "-", "+", "~", "++", "--"};
        for (std::string_view op : prefixOps) {
            if (at_op(op)) {
                eat();
                Unary u;
                u.op = op;
                u.prefix = true;
                u.operand = std::make_unique<Expr>(unary());
                return Expr{span_from(start), std::move(u)};
            }
        }
        if (at_kw("delete") || at_kw("new")) {
            Unary u;
            u.op = eat().text;
            u.prefix = true;
            u.operand = std::make_unique<Expr>(unary());
            return Expr{span_from(start), std::move(u)};
        }
        return postfix();
    }

    Expr postfix() {
        Expr e = primary();
        for (;;) {
            if (at_punct('.')) {
                eat();
                Member m;
                if (cur().kind != TokenKind::Identifier && cur().kind != TokenKind::Keyword)
                    fail({"member name"});
                m.member = eat().text;
                Span sp = e.span;
                sp.end = token_end(prev());
                m.base = std::make_unique<Expr>(std::move(e));
                e = Expr{sp, std::move(m)};
            } else if (at_punct('[')) {
                eat();
                Index ix;
                ix.index = std::make_unique<Expr>(expression());
                expect_punct(']');
                Span sp = e.span;
                sp.end = token_end(prev());
                ix.base = std::make_unique<Expr>(std::move(e));
                e = Expr{sp, std::move(ix)};
            } else if (at_punct('(')) {
                eat();
                Call call;
                if (!at_punct(')')) {
                    do {
                        call.args.push_back(std::make_unique<Expr>(expression()));
                    } while (accept_punct(','));
                }
                expect_punct(')');
                Span sp = e.span;
                sp.end = token_end(prev());
                call.callee = std::make_unique<Expr>(std::move(e));
                e = Expr{sp, std::move(call)};
            } else if (at_op("++") || at_op("--")) {
                Unary u;
                u.op = eat().text;
                u.prefix = false;
                Span sp = e.span;
                sp.end = token_end(prev());
                u.operand = std::make_unique<Expr>(std::move(e));
                e = Expr{sp, std::move(u)};
            } else {
                return e;
            }
        }
    }

    Expr primary() {
        std::size_t start = pos_;
        if (cur().kind == TokenKind::Number) {
            NumberLit lit;
            lit.text = eat().text;
            lit.value = number_value(lit.text);
            if (cur().kind == TokenKind::EtherUnit) {
                lit.unit = eat().text;
                lit.value *= Ratio(*unit_scale(lit.unit));
            }
            return Expr{span_from(start), std::move(lit)};
        }
        if (cur().kind == TokenKind::String) {
            StringLit lit{eat().text};
            return Expr{span_from(start), std::move(lit)};
        }
        if (at_kw("true") || at_kw("false")) {
            BoolLit lit{eat().text == "true"};
            return Expr{span_from(start), std::move(lit)};
        }
        if (cur().kind == TokenKind::Identifier ||
            (cur().kind == TokenKind::Keyword && is_elementary_type_word(cur().text)) ||
            at_kw("mapping")) {
            // type words double as cast callees, e.g. uint256(x)
            Ident id{eat().text};
            return Expr{span_from(start), std::move(id)};
        }
        if (accept_punct('(')) {
            Expr first = expression();
            if (at_punct(',')) {
                Tuple t;
                t.elems.push_back(std::make_unique<Expr>(std::move(first)));
                while (accept_punct(',')) t.elems.push_back(std::make_unique<Expr>(expression()));
                expect_punct(')');
                return Expr{span_from(start), std::move(t)};
            }
            expect_punct(')');
            first.span = span_from(start);  // widen over the parentheses
            return first;
        }
        fail({"expression"});
    }

    // -- error recovery -----------------------------------------------------

    /// Consumes a balanced run of tokens ending at a ';' at depth zero or just
    /// before the enclosing '}'. Rethrows when brackets never balance.
    std::string recover_balanced() {
        std::size_t start = pos_;
        int depth = 0;
        bool consumed = false;
        while (!at_eof()) {
            if (depth == 0 && at_punct(';')) {
                eat();
                return text_from(start);
            }
            if (depth == 0 && at_punct('}')) {
                if (!consumed) break;
                return text_from(start);
            }
            if (at_punct('{') || at_punct('(') || at_punct('[')) ++depth;
            if (at_punct('}') || at_punct(')') || at_punct(']')) --depth;
            eat();
            consumed = true;
            if (depth == 0 && prev().kind == TokenKind::Punct && prev().text == "}")
                return text_from(start);
        }
        fail({"balanced statement"});
    }

    void skip_balanced_until(char closer) {
        int depth = 1;
        while (depth > 0) {
            if (at_eof()) fail({std::string(1, closer)});
            if (at_punct('(') || at_punct('[') || at_punct('{')) ++depth;
            if (at_punct(')') || at_punct(']') || at_punct('}')) --depth;
            eat();
        }
    }
};

}  // namespace

SourceUnit parse(std::string source) { return Parser(std::move(source)).run(); }

}  // namespace ponzi::sol
