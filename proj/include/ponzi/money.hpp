// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ponzi {

/// Exact integer amount in wei. Never negative by convention; operations that
/// could underflow must check first.
using Wei = boost::multiprecision::cpp_int;

/// Exact rational, used for multipliers, fees and ROI values.
using Ratio = boost::multiprecision::cpp_rational;

inline Wei wei(long long n) { return Wei(n); }
inline Wei szabo(long long n) { return Wei(n) * Wei("1000000000000"); }
inline Wei finney(long long n) { return Wei(n) * Wei("1000000000000000"); }
inline Wei ether(long long n) { return Wei(n) * Wei("1000000000000000000"); }

/// Scale factor for a currency-unit suffix, or nullopt if the word is not one.
inline std::optional<Wei> unit_scale(std::string_view unit) {
    if (unit == "wei") return Wei(1);
    if (unit == "szabo") return szabo(1);
    if (unit == "finney") return finney(1);
    if (unit == "ether") return ether(1);
    return std::nullopt;
}

struct AmountError : std::runtime_error {
    explicit AmountError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "8wei", "500finney", "1ether", "0.1ether" or a bare wei integer.
/// The scaled value must be a whole number of wei.
inline Wei parse_amount(std::string_view text) {
    if (text.empty()) throw AmountError("empty amount");
    std::size_t i = 0;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
        ++i;
    std::string digits(text.substr(0, i));
    std::string unit(text.substr(i));
    if (digits.empty()) throw AmountError("amount has no digits: " + std::string(text));

    Wei scale(1);
    if (!unit.empty()) {
        auto s = unit_scale(unit);
        if (!s) throw AmountError("unknown currency unit: " + unit);
        scale = *s;
    }

    auto dot = digits.find('.');
    if (dot == std::string::npos) return Wei(digits) * scale;
    if (digits.find('.', dot + 1) != std::string::npos)
        throw AmountError("malformed amount: " + std::string(text));

    std::string frac = digits.substr(dot + 1);
    std::string whole = digits.substr(0, dot);
    if (whole.empty()) whole = "0";
    if (frac.empty()) throw AmountError("malformed amount: " + std::string(text));
    Wei denom(1);
    for (std::size_t k = 0; k < frac.size(); ++k) denom *= 10;
    Ratio value = Ratio(Wei(whole)) + Ratio(Wei(frac), denom);
    Ratio scaled = value * Ratio(scale);
    if (boost::multiprecision::denominator(scaled) != 1)
        throw AmountError("amount is not a whole number of wei: " + std::string(text));
    return Wei(boost::multiprecision::numerator(scaled));
}

inline std::string to_string(const Wei& w) { return w.str(); }

inline std::string to_string(const Ratio& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace ponzi
