// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace ponzi {

namespace {

std::array<unsigned char, 32> sha256_digest(std::string_view bytes) {
    std::array<unsigned char, 32> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != digest.size())
        throw std::runtime_error("SHA-256 digest failed");
    return digest;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    static const char* hex = "0123456789abcdef";
    auto digest = sha256_digest(bytes);
    std::string out;
    out.reserve(64);
    for (unsigned char b : digest) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xF]);
    }
    return out;
}

Wei sha256_uint(std::string_view bytes) {
    auto digest = sha256_digest(bytes);
    Wei value = 0;
    for (unsigned char b : digest) value = (value << 8) | b;
    return value;
}

}  // namespace ponzi
