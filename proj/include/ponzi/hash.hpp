// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/money.hpp"

#include <string>
#include <string_view>

namespace ponzi {

/// SHA-256 digest as lowercase hex.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 digest as a 256-bit unsigned integer (big endian).
Wei sha256_uint(std::string_view bytes);

}  // namespace ponzi
