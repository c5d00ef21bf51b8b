// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include "ponzi/classifier.hpp"
#include "ponzi/findings.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ponzi {

enum class PayoutOrderBias { InitiatorFirst, EarlyFirst, None };

const char* payout_order_bias_name(PayoutOrderBias b);

struct Characteristics {
    bool has_min_deposit_guard = false;
    std::optional<Wei> min_deposit_wei;
    bool has_owner_fee = false;
    PayoutOrderBias payout_order_bias = PayoutOrderBias::None;
};

struct FileResult {
    std::string path;
    std::string content_hash;
    bool parsed = false;
    std::optional<Classification> classification;  // nullopt on parse failure
    std::vector<Finding> findings;                 // sorted by (line, column, tag)
    Characteristics characteristics;
};

struct ReportSummary {
    int schema_version = 1;
    std::size_t total_files = 0;
    std::size_t parsed_files = 0;
    std::map<SchemeClass, std::size_t> counts_by_class;  // every class present, zeros included
    std::map<Swc, std::size_t> counts_by_swc;            // every tag present, zeros included
    // min-deposit prevalence among files classified as some scheme
    std::size_t min_deposit_num = 0;
    std::size_t min_deposit_den = 0;
    std::vector<FileResult> per_file;
};

enum class ReportFormat { Json, Csv, Text };

struct ReportError : std::runtime_error {
    explicit ReportError(const std::string& what) : std::runtime_error(what) {}
};

ReportFormat report_format_from_name(const std::string& name);  // ReportError

/// Full per-file pipeline: parse, fingerprint, classify, detect. Total: parse
/// failures yield a marked result instead of throwing.
FileResult analyze_file(const std::string& path, const std::string& source);

/// Counts and prevalence over results, per-file order preserved.
ReportSummary aggregate(const std::vector<FileResult>& results);

/// Deterministic rendering; identical summaries give identical bytes.
std::string emit(const ReportSummary& summary, ReportFormat format);

/// Inverse of the Json format, for re-rendering saved reports.
ReportSummary summary_from_json(const std::string& json);

}  // namespace ponzi
