// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/sol/ast.hpp"
#include "ponzi/sol/token.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ponzi::sol {

struct ParseError : std::runtime_error {
    ParseError(int line, int column, std::vector<std::string> expected, const std::string& what)
        : std::runtime_error(what), line(line), column(column), expected(std::move(expected)) {}
    int line;
    int column;
    std::vector<std::string> expected;
};

/// Parses one source file. Statements that use constructs outside the
/// supported subset are preserved as opaque statements as long as their
/// brackets balance; structurally broken files throw ParseError.
/// May also throw LexError for characters outside the lexical subset.
SourceUnit parse(std::string source);

}  // namespace ponzi::sol
