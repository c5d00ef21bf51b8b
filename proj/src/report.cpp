// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/report.hpp"

#include "ponzi/hash.hpp"
#include "ponzi/sol/parser.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>

namespace ponzi {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::array<SchemeClass, 5> kClassOrder = {SchemeClass::Tree, SchemeClass::Chain,
                                                    SchemeClass::Waterfall, SchemeClass::Transfer,
                                                    SchemeClass::Unknown};
constexpr std::array<Swc, 3> kSwcOrder = {Swc::OverflowRisk, Swc::UncheckedSend,
                                          Swc::StateAnomaly};

/// Precedence when a file holds several contracts: the most specific scheme
/// wins, mirroring the classifier's rule order.
int class_rank(SchemeClass c) {
    switch (c) {
        case SchemeClass::Tree: return 0;
        case SchemeClass::Transfer: return 1;
        case SchemeClass::Chain: return 2;
        case SchemeClass::Waterfall: return 3;
        case SchemeClass::Unknown: return 4;
    }
    return 5;
}

SchemeClass class_from_name(const std::string& name) {
    for (SchemeClass c : kClassOrder)
        if (name == scheme_class_name(c)) return c;
    throw ReportError("unknown scheme class: " + name);
}

Swc swc_from_tag(const std::string& tag) {
    for (Swc s : kSwcOrder)
        if (tag == swc_tag(s)) return s;
    throw ReportError("unknown SWC tag: " + tag);
}

std::string prevalence_decimal(std::size_t num, std::size_t den) {
    if (den == 0) return "n/a";
    // four fixed decimal places, truncated
    unsigned long long scaled = static_cast<unsigned long long>(num) * 10000ull / den;
    std::ostringstream os;
    os << scaled / 10000 << "." << std::setw(4) << std::setfill('0') << scaled % 10000;
    return os.str();
}

}  // namespace

const char* payout_order_bias_name(PayoutOrderBias b) {
    switch (b) {
        case PayoutOrderBias::InitiatorFirst: return "initiator-first";
        case PayoutOrderBias::EarlyFirst: return "early-first";
        case PayoutOrderBias::None: return "none";
    }
    return "?";
}

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    throw ReportError("unsupported format: " + name);
}

FileResult analyze_file(const std::string& path, const std::string& source) {
    FileResult result;
    result.path = path;
    result.content_hash = sha256_hex(source);

    sol::SourceUnit unit;
    try {
        unit = sol::parse(source);
    } catch (const sol::ParseError&) {
        return result;
    } catch (const sol::LexError&) {
        return result;
    }
    result.parsed = true;
    result.findings = scan_contract(unit);

    const ContractFingerprint* chosenFp = nullptr;
    std::optional<Classification> chosen;
    std::vector<ContractFingerprint> fps;
    fps.reserve(unit.contracts.size());
    for (const auto& c : unit.contracts) fps.push_back(extract_fingerprint(unit, c));
    for (const auto& fp : fps) {
        Classification cls = classify(fp);
        if (!chosen || class_rank(cls.scheme) < class_rank(chosen->scheme)) {
            chosen = cls;
            chosenFp = &fp;
        }
    }
    if (!chosen) {  // a file with no contracts at all
        chosen = Classification{};
    }
    result.classification = std::move(chosen);

    if (chosenFp) {
        result.characteristics.has_min_deposit_guard = chosenFp->min_deposit_guard.present;
        result.characteristics.min_deposit_wei = chosenFp->min_deposit_wei;
        result.characteristics.has_owner_fee = chosenFp->owner_fee.present;
        if (chosenFp->owner_fee)
            result.characteristics.payout_order_bias = PayoutOrderBias::InitiatorFirst;
        else if (chosenFp->payout_fifo_multiplier || chosenFp->payout_pro_rata)
            result.characteristics.payout_order_bias = PayoutOrderBias::EarlyFirst;
    }
    return result;
}

ReportSummary aggregate(const std::vector<FileResult>& results) {
    ReportSummary s;
    for (SchemeClass c : kClassOrder) s.counts_by_class[c] = 0;
    for (Swc tag : kSwcOrder) s.counts_by_swc[tag] = 0;
    s.total_files = results.size();
    for (const FileResult& r : results) {
        if (r.parsed) {
            ++s.parsed_files;
            s.counts_by_class[r.classification->scheme] += 1;
            if (r.classification->scheme != SchemeClass::Unknown) {
                ++s.min_deposit_den;
                if (r.characteristics.has_min_deposit_guard) ++s.min_deposit_num;
            }
        }
        for (const Finding& f : r.findings) s.counts_by_swc[f.swc] += 1;
    }
    s.per_file = results;
    return s;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace {

ordered_json file_to_json(const FileResult& r) {
    ordered_json j;
    j["path"] = r.path;
    j["contentHash"] = r.content_hash;
    j["parsed"] = r.parsed;
    if (r.parsed && r.classification) {
        j["class"] = scheme_class_name(r.classification->scheme);
        j["confidence"] =
            r.classification->confidence == Confidence::Definite ? "definite" : "heuristic";
        ordered_json rationale = ordered_json::array();
        for (const auto& reason : r.classification->rationale) {
            rationale.push_back({{"feature", reason.feature},
                                 {"line", reason.loc.line},
                                 {"column", reason.loc.column}});
        }
        j["rationale"] = std::move(rationale);
    } else {
        j["class"] = nullptr;
        j["confidence"] = nullptr;
        j["rationale"] = ordered_json::array();
    }
    ordered_json findings = ordered_json::array();
    for (const Finding& f : r.findings) {
        findings.push_back({{"swc", swc_tag(f.swc)},
                            {"contract", f.contract},
                            {"function", f.function},
                            {"line", f.loc.line},
                            {"column", f.loc.column},
                            {"snippet", f.snippet},
                            {"message", f.message}});
    }
    j["findings"] = std::move(findings);
    ordered_json ch;
    ch["minDepositGuard"] = r.characteristics.has_min_deposit_guard;
    ch["minDepositWei"] = r.characteristics.min_deposit_wei
                              ? ordered_json(r.characteristics.min_deposit_wei->str())
                              : ordered_json(nullptr);
    ch["ownerFee"] = r.characteristics.has_owner_fee;
    ch["payoutOrderBias"] = payout_order_bias_name(r.characteristics.payout_order_bias);
    j["characteristics"] = std::move(ch);
    return j;
}

std::string emit_json(const ReportSummary& s) {
    ordered_json j;
    j["schemaVersion"] = s.schema_version;
    j["totalFiles"] = s.total_files;
    j["parsedFiles"] = s.parsed_files;
    ordered_json classes;
    for (SchemeClass c : kClassOrder) classes[scheme_class_name(c)] = s.counts_by_class.at(c);
    j["countsByClass"] = std::move(classes);
    ordered_json swcs;
    for (Swc tag : kSwcOrder) swcs[swc_tag(tag)] = s.counts_by_swc.at(tag);
    j["countsBySwc"] = std::move(swcs);
    j["minDepositPrevalence"] = {
        {"num", s.min_deposit_num},
        {"den", s.min_deposit_den},
        {"decimal", s.min_deposit_den == 0
                        ? ordered_json(nullptr)
                        : ordered_json(prevalence_decimal(s.min_deposit_num, s.min_deposit_den))}};
    ordered_json files = ordered_json::array();
    for (const FileResult& r : s.per_file) files.push_back(file_to_json(r));
    j["files"] = std::move(files);
    return j.dump(2) + "\n";
}

std::string emit_csv(const ReportSummary& s) {
    std::ostringstream os;
    os << "metric,value\n";
    os << "schemaVersion," << s.schema_version << "\n";
    os << "totalFiles," << s.total_files << "\n";
    os << "parsedFiles," << s.parsed_files << "\n";
    for (SchemeClass c : kClassOrder)
        os << scheme_class_name(c) << "," << s.counts_by_class.at(c) << "\n";
    for (Swc tag : kSwcOrder) os << swc_tag(tag) << "," << s.counts_by_swc.at(tag) << "\n";
    os << "minDepositPrevalence," << prevalence_decimal(s.min_deposit_num, s.min_deposit_den)
       << "\n";
    os << "\n";
    os << "path,class,confidence,findings,swc101,swc104,swc110,minDepositGuard,minDepositWei,"
          "ownerFee,payoutOrderBias\n";
    for (const FileResult& r : s.per_file) {
        std::size_t n101 = 0, n104 = 0, n110 = 0;
        for (const Finding& f : r.findings) {
            if (f.swc == Swc::OverflowRisk) ++n101;
            if (f.swc == Swc::UncheckedSend) ++n104;
            if (f.swc == Swc::StateAnomaly) ++n110;
        }
        os << r.path << ",";
        if (r.parsed && r.classification) {
            os << scheme_class_name(r.classification->scheme) << ","
               << (r.classification->confidence == Confidence::Definite ? "definite"
                                                                        : "heuristic");
        } else {
            os << "parse-failure,";
        }
        os << "," << r.findings.size() << "," << n101 << "," << n104 << "," << n110 << ","
           << (r.characteristics.has_min_deposit_guard ? "true" : "false") << ","
           << (r.characteristics.min_deposit_wei ? r.characteristics.min_deposit_wei->str() : "")
           << "," << (r.characteristics.has_owner_fee ? "true" : "false") << ","
           << payout_order_bias_name(r.characteristics.payout_order_bias) << "\n";
    }
    return os.str();
}

std::string emit_text(const ReportSummary& s) {
    std::ostringstream os;
    os << "ponziscan report (schema " << s.schema_version << ")\n";
    os << "files: " << s.total_files << " total, " << s.parsed_files << " parsed\n";
    os << "classes:";
    for (SchemeClass c : kClassOrder)
        os << " " << scheme_class_name(c) << "=" << s.counts_by_class.at(c);
    os << "\nfindings:";
    for (Swc tag : kSwcOrder) os << " " << swc_tag(tag) << "=" << s.counts_by_swc.at(tag);
    os << "\nmin-deposit guards among classified schemes: " << s.min_deposit_num << "/"
       << s.min_deposit_den << " (" << prevalence_decimal(s.min_deposit_num, s.min_deposit_den)
       << ")\n";
    for (const FileResult& r : s.per_file) {
        os << "\n==== " << r.path << " ====\n";
        if (r.parsed && r.classification) {
            os << "class: " << scheme_class_name(r.classification->scheme) << " ("
               << (r.classification->confidence == Confidence::Definite ? "definite"
                                                                        : "heuristic")
               << ")\n";
            for (const auto& reason : r.classification->rationale)
                os << "  evidence: " << reason.feature << " at " << reason.loc.line << ":"
                   << reason.loc.column << "\n";
            os << "characteristics: min-deposit="
               << (r.characteristics.has_min_deposit_guard ? "yes" : "no");
            if (r.characteristics.min_deposit_wei)
                os << " (" << r.characteristics.min_deposit_wei->str() << " wei)";
            os << ", owner-fee=" << (r.characteristics.has_owner_fee ? "yes" : "no")
               << ", payout-order-bias="
               << payout_order_bias_name(r.characteristics.payout_order_bias) << "\n";
        } else {
            os << "class: parse-failure\n";
        }
        os << "findings (" << r.findings.size() << "):\n";
        for (const Finding& f : r.findings) {
            os << "  " << swc_tag(f.swc) << " at " << f.loc.line << ":" << f.loc.column << " in "
               << f.contract << "." << f.function << ": " << f.snippet << "\n";
            os << "    " << f.message << "\n";
        }
    }
    return os.str();
}

}  // namespace

std::string emit(const ReportSummary& summary, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return emit_json(summary);
        case ReportFormat::Csv: return emit_csv(summary);
        case ReportFormat::Text: return emit_text(summary);
    }
    throw ReportError("unsupported format");
}

ReportSummary summary_from_json(const std::string& json) {
    ordered_json j;
    try {
        j = ordered_json::parse(json);
    } catch (const nlohmann::json::exception& e) {
        throw ReportError(std::string("malformed report JSON: ") + e.what());
    }
    ReportSummary s;
    try {
        s.schema_version = j.at("schemaVersion").get<int>();
        s.total_files = j.at("totalFiles").get<std::size_t>();
        s.parsed_files = j.at("parsedFiles").get<std::size_t>();
        for (SchemeClass c : kClassOrder)
            s.counts_by_class[c] = j.at("countsByClass").at(scheme_class_name(c)).get<std::size_t>();
        for (Swc tag : kSwcOrder)
            s.counts_by_swc[tag] = j.at("countsBySwc").at(swc_tag(tag)).get<std::size_t>();
        s.min_deposit_num = j.at("minDepositPrevalence").at("num").get<std::size_t>();
        s.min_deposit_den = j.at("minDepositPrevalence").at("den").get<std::size_t>();
        for (const auto& jf : j.at("files")) {
            FileResult r;
            r.path = jf.at("path").get<std::string>();
            r.content_hash = jf.at("contentHash").get<std::string>();
            r.parsed = jf.at("parsed").get<bool>();
            if (r.parsed && !jf.at("class").is_null()) {
                Classification cls;
                cls.scheme = class_from_name(jf.at("class").get<std::string>());
                cls.confidence = jf.at("confidence").get<std::string>() == "definite"
                                     ? Confidence::Definite
                                     : Confidence::Heuristic;
                for (const auto& jr : jf.at("rationale")) {
                    cls.rationale.push_back({jr.at("feature").get<std::string>(),
                                             {jr.at("line").get<int>(),
                                              jr.at("column").get<int>()}});
                }
                r.classification = std::move(cls);
            }
            for (const auto& jfind : jf.at("findings")) {
                Finding f;
                f.swc = swc_from_tag(jfind.at("swc").get<std::string>());
                f.contract = jfind.at("contract").get<std::string>();
                f.function = jfind.at("function").get<std::string>();
                f.loc = {jfind.at("line").get<int>(), jfind.at("column").get<int>()};
                f.snippet = jfind.at("snippet").get<std::string>();
                f.message = jfind.at("message").get<std::string>();
                r.findings.push_back(std::move(f));
            }
            const auto& jc = jf.at("characteristics");
            r.characteristics.has_min_deposit_guard = jc.at("minDepositGuard").get<bool>();
            if (!jc.at("minDepositWei").is_null())
                r.characteristics.min_deposit_wei = Wei(jc.at("minDepositWei").get<std::string>());
            r.characteristics.has_owner_fee = jc.at("ownerFee").get<bool>();
            const std::string bias = jc.at("payoutOrderBias").get<std::string>();
            if (bias == "initiator-first")
                r.characteristics.payout_order_bias = PayoutOrderBias::InitiatorFirst;
            else if (bias == "early-first")
                r.characteristics.payout_order_bias = PayoutOrderBias::EarlyFirst;
            s.per_file.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ReportError(std::string("report JSON missing fields: ") + e.what());
    }
    return s;
}

}  // namespace ponzi
