// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/sol/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace ponzi::sol {

const char* token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Number: return "number";
        case TokenKind::EtherUnit: return "unit";
        case TokenKind::String: return "string";
        case TokenKind::Operator: return "operator";
        case TokenKind::Punct: return "punct";
        case TokenKind::EndOfFile: return "eof";
    }
    return "?";
}

namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "contract", "library", "interface", "function", "modifier", "struct", "enum",
    "event", "mapping", "address", "bool", "string", "var", "byte", "if", "else",
    "while", "for", "do", "return", "returns", "throw", "break", "continue",
    "new", "delete", "public", "private", "internal", "external", "payable",
    "constant", "view", "pure", "memory", "storage", "calldata", "indexed",
    "anonymous", "pragma", "import", "is", "using", "assembly", "emit",
    "constructor", "true", "false",
};

const std::unordered_set<std::string_view> kUnits = {"wei", "szabo", "finney", "ether"};

bool sized_type_keyword(std::string_view word) {
    // uint/int/bytes with an optional size suffix, e.g. uint256, bytes32.
    std::string_view base;
    if (word.starts_with("uint")) base = word.substr(4);
    else if (word.starts_with("int")) base = word.substr(3);
    else if (word.starts_with("bytes")) base = word.substr(5);
    else return false;
    return std::all_of(base.begin(), base.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Longest-match operator table, ordered by length.
const std::array<std::string_view, 34> kOperators = {
    "<<=", ">>=", "**",  "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=",  "*=",  "/=", "%=", "|=", "&=", "^=", "<<", ">>", ":=",
    "=>", "=",   "<",   ">",  "+",  "-",  "*",  "/",  "%",  "!",  "~",  "?",
};

bool is_punct(char c) {
    switch (c) {
        case '(': case ')': case '{': case '}': case '[': case ']':
        case ';': case ',': case '.':
            return true;
        default:
            return false;
    }
}

std::string utf8_char_at(std::string_view s, std::size_t i) {
    unsigned char lead = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if ((lead & 0xF8) == 0xF0) len = 4;
    else if ((lead & 0xF0) == 0xE0) len = 3;
    else if ((lead & 0xE0) == 0xC0) len = 2;
    return std::string(s.substr(i, std::min(len, s.size() - i)));
}

}  // namespace

bool is_keyword(std::string_view word) {
    return kKeywords.contains(word) || sized_type_keyword(word);
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](TokenKind kind, std::size_t begin, std::size_t len, int tl, int tc) {
        out.push_back({kind, std::string(src.substr(begin, len)), tl, tc, begin});
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            int cl = line, cc = col;
            advance(2);
            bool closed = false;
            while (i < src.size()) {
                if (src[i] == '*' && i + 1 < src.size() && src[i + 1] == '/') {
                    advance(2);
                    closed = true;
                    break;
                }
                advance(1);
            }
            if (!closed) throw LexError(cl, cc, "/*", "unterminated block comment");
            continue;
        }

        int tl = line, tc = col;
        std::size_t begin = i;

        if (ident_start(c)) {
            while (i < src.size() && ident_char(src[i])) advance(1);
            std::string_view word = src.substr(begin, i - begin);
            TokenKind kind = TokenKind::Identifier;
            if (kUnits.contains(word)) kind = TokenKind::EtherUnit;
            else if (is_keyword(word)) kind = TokenKind::Keyword;
            push(kind, begin, i - begin, tl, tc);
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (c == '0' && i + 1 < src.size() && (src[i + 1] == 'x' || src[i + 1] == 'X')) {
                advance(2);
                while (i < src.size() && std::isxdigit(static_cast<unsigned char>(src[i]))) advance(1);
            } else {
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
                if (i + 1 < src.size() && src[i] == '.' &&
                    std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
                    advance(1);
                    while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
                }
                if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                    std::size_t mark = i;
                    advance(1);
                    if (i < src.size() && (src[i] == '+' || src[i] == '-')) advance(1);
                    if (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
                    } else {
                        // not an exponent after all; rewind is unsafe with line
                        // tracking, but 'e' starts an identifier so this only
                        // happens for text like "1e" which we reject
                        throw LexError(tl, tc, std::string(src.substr(mark, 1)),
                                       "malformed numeric literal");
                    }
                }
            }
            push(TokenKind::Number, begin, i - begin, tl, tc);
            continue;
        }

        if (c == '"' || c == '\'') {
            char quote = c;
            advance(1);
            while (i < src.size() && src[i] != quote && src[i] != '\n') {
                if (src[i] == '\\' && i + 1 < src.size()) advance(2);
                else advance(1);
            }
            if (i >= src.size() || src[i] != quote)
                throw LexError(tl, tc, std::string(1, quote), "unterminated string literal");
            advance(1);
            push(TokenKind::String, begin, i - begin, tl, tc);
            continue;
        }

        if (is_punct(c)) {
            advance(1);
            push(TokenKind::Punct, begin, 1, tl, tc);
            continue;
        }

        bool matched = false;
        for (std::string_view op : kOperators) {
            if (src.substr(i).starts_with(op)) {
                advance(op.size());
                push(TokenKind::Operator, begin, op.size(), tl, tc);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (c == ':' || c == '&' || c == '|' || c == '^') {
            advance(1);
            push(TokenKind::Operator, begin, 1, tl, tc);
            continue;
        }

        throw LexError(tl, tc, utf8_char_at(src, i),
                       "character outside the supported subset: '" + utf8_char_at(src, i) + "'");
    }

    out.push_back({TokenKind::EndOfFile, "", line, col, src.size()});
    return out;
}

}  // namespace ponzi::sol
