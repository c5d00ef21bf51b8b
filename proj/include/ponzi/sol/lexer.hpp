// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/sol/token.hpp"

#include <string_view>
#include <vector>

namespace ponzi::sol {

/// Scans the source into a token stream with comments stripped.
/// The final token is always EndOfFile. Throws LexError on characters
/// outside the supported subset.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

}  // namespace ponzi::sol
