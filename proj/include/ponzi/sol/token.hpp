// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ponzi::sol {

enum class TokenKind {
    Keyword,
    Identifier,
    Number,
    EtherUnit,
    String,
    Operator,
    Punct,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string text;        // verbatim source slice (strings keep their quotes)
    int line = 1;            // 1-based
    int column = 1;          // 1-based, in bytes
    std::size_t offset = 0;  // byte offset into the source
};

const char* token_kind_name(TokenKind kind);

struct LexError : std::runtime_error {
    LexError(int line, int column, std::string offending, const std::string& what)
        : std::runtime_error(what), line(line), column(column), offending(std::move(offending)) {}
    int line;
    int column;
    std::string offending;  // the character (full UTF-8 sequence) that broke the lexer
};

}  // namespace ponzi::sol
