// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
//
// Command-line front end. Exit codes: 0 success, 1 analysis finished and
// found something, 2 usage or configuration error, 3 I/O error.

#include "ponzi/classifier.hpp"
#include "ponzi/corpus.hpp"
#include "ponzi/findings.hpp"
#include "ponzi/report.hpp"
#include "ponzi/sim/fomo3d.hpp"
#include "ponzi/sim/schemes.hpp"
#include "ponzi/sol/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("cannot read " + path);
    return ss.str();
}

void write_output(const std::string& outPath, const std::string& data) {
    if (outPath.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream f(outPath, std::ios::binary);
    if (!f) throw IoError("cannot write " + outPath);
    f << data;
    if (!f) throw IoError("cannot write " + outPath);
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

int cmd_scan(const std::string& dir, const std::string& format, const std::string& outPath,
             unsigned parallel) {
    ponzi::CorpusManifest manifest = ponzi::load_corpus(dir);

    std::vector<ponzi::FileResult> results(manifest.entries.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= manifest.entries.size()) return;
            const auto& entry = manifest.entries[i];
            std::string source = slurp((std::filesystem::path(manifest.root) / entry.path).string());
            results[i] = ponzi::analyze_file(entry.path, source);
        }
    };
    if (parallel <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < parallel; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ponzi::ReportSummary summary = ponzi::aggregate(results);
    write_output(outPath, ponzi::emit(summary, ponzi::report_format_from_name(format)));

    std::size_t findings = 0;
    for (const auto& r : results) findings += r.findings.size();
    return findings > 0 ? kExitFindings : kExitOk;
}

// ---------------------------------------------------------------------------
// classify / findings
// ---------------------------------------------------------------------------

int cmd_classify(const std::vector<std::string>& paths) {
    for (const auto& path : paths) {
        ponzi::FileResult r = ponzi::analyze_file(path, slurp(path));
        if (paths.size() > 1) std::cout << path << ": ";
        if (!r.parsed || !r.classification) {
            std::cout << "parse-failure\n";
            continue;
        }
        std::cout << ponzi::scheme_class_name(r.classification->scheme) << " ("
                  << (r.classification->confidence == ponzi::Confidence::Definite ? "definite"
                                                                                  : "heuristic")
                  << ")\n";
        for (const auto& reason : r.classification->rationale)
            std::cout << "  " << reason.feature << " at " << reason.loc.line << ":"
                      << reason.loc.column << "\n";
    }
    return kExitOk;
}

int cmd_findings(const std::vector<std::string>& paths, const std::string& format,
                 const std::string& outPath) {
    std::vector<ponzi::FileResult> results;
    results.reserve(paths.size());
    for (const auto& path : paths) results.push_back(ponzi::analyze_file(path, slurp(path)));
    ponzi::ReportSummary summary = ponzi::aggregate(results);
    write_output(outPath, ponzi::emit(summary, ponzi::report_format_from_name(format)));
    std::size_t findings = 0;
    for (const auto& r : results) findings += r.findings.size();
    return findings > 0 ? kExitFindings : kExitOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

std::string render_trace_text(const std::vector<ponzi::sim::Event>& trace,
                              const ponzi::sim::RoiTable& roi) {
    std::ostringstream os;
    for (const auto& ev : trace)
        os << ev.step << " " << ponzi::sim::event_kind_name(ev.kind) << " " << ev.actor << " "
           << ev.amount.str() << "\n";
    os << "-- roi --\n";
    for (const auto& [actor, row] : roi.rows) {
        os << actor << " in " << row.total_in.str() << " out " << row.total_out.str();
        if (row.roi) os << " roi " << ponzi::to_string(*row.roi);
        os << "\n";
    }
    os << "owner gain " << roi.owner_gain.str() << "\n";
    os << "contract residual " << roi.contract_residual.str() << "\n";
    return os.str();
}

std::string render_trace_json(const std::vector<ponzi::sim::Event>& trace,
                              const ponzi::sim::RoiTable& roi) {
    nlohmann::ordered_json j;
    auto events = nlohmann::ordered_json::array();
    for (const auto& ev : trace)
        events.push_back({{"step", ev.step},
                          {"kind", ponzi::sim::event_kind_name(ev.kind)},
                          {"actor", ev.actor},
                          {"amount", ev.amount.str()}});
    j["trace"] = std::move(events);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& [actor, row] : roi.rows) {
        rows.push_back({{"actor", actor},
                        {"totalIn", row.total_in.str()},
                        {"totalOut", row.total_out.str()},
                        {"roi", row.roi ? nlohmann::ordered_json(ponzi::to_string(*row.roi))
                                        : nlohmann::ordered_json(nullptr)}});
    }
    j["roi"] = std::move(rows);
    j["ownerGain"] = roi.owner_gain.str();
    j["contractResidual"] = roi.contract_residual.str();
    return j.dump(2) + "\n";
}

int cmd_simulate(const std::string& scheme, const std::string& scriptPath,
                 const std::string& format, const std::string& outPath, bool faithfulBugs,
                 const std::string& contribution, const std::string& startingAmount,
                 const std::string& minDeposit) {
    ponzi::sim::SchemeKind kind = ponzi::sim::scheme_kind_from_name(scheme);
    ponzi::sim::ScenarioParams params;
    params.chain.faithful_stuck_index = faithfulBugs;
    if (!contribution.empty()) params.tree.contribution = ponzi::parse_amount(contribution);
    if (!startingAmount.empty())
        params.transfer.starting_amount = ponzi::parse_amount(startingAmount);
    if (!minDeposit.empty()) params.chain.min_deposit = ponzi::parse_amount(minDeposit);

    auto script = ponzi::sim::parse_script(slurp(scriptPath));
    auto result = ponzi::sim::run_scenario(kind, params, script);

    std::string rendered = format == "json" ? render_trace_json(result.trace, result.roi)
                                            : render_trace_text(result.trace, result.roi);
    write_output(outPath, rendered);
    return kExitOk;
}

int cmd_fomo3d(const std::string& scriptPath, const std::string& format,
               const std::string& outPath, const std::string& airdropThreshold,
               unsigned potShare) {
    ponzi::sim::Fomo3dParams params;
    if (!airdropThreshold.empty())
        params.airdrop_threshold = ponzi::parse_amount(airdropThreshold);
    if (potShare > 0) {
        if (potShare > 86) throw ponzi::sim::SimError(ponzi::sim::SimError::Kind::BadScript,
                                                      "--pot-share above 86");
        for (auto& [team, split] : params.split)
            split = {potShare, 86 - potShare};
    }
    auto script = ponzi::sim::parse_round_script(slurp(scriptPath));
    auto result = ponzi::sim::run_round(params, script);

    std::ostringstream state;
    state << "pot " << result.state.pot.str() << "\n"
          << "dividends " << result.state.dividend_pool.str() << "\n"
          << "teamFund " << result.state.team_fund.str() << "\n"
          << "potSwap " << result.state.pot_swap.str() << "\n"
          << "airdropPot " << result.state.airdrop_pot.str() << "\n"
          << "tracker " << result.state.airdrop_tracker << "\n"
          << "roundOver " << (result.state.round_over ? "true" : "false") << "\n";

    if (format == "json") {
        nlohmann::ordered_json j;
        auto events = nlohmann::ordered_json::array();
        for (const auto& ev : result.trace)
            events.push_back({{"step", ev.step},
                              {"kind", ponzi::sim::event_kind_name(ev.kind)},
                              {"actor", ev.actor},
                              {"amount", ev.amount.str()}});
        j["trace"] = std::move(events);
        j["pot"] = result.state.pot.str();
        j["dividends"] = result.state.dividend_pool.str();
        j["teamFund"] = result.state.team_fund.str();
        j["potSwap"] = result.state.pot_swap.str();
        j["airdropPot"] = result.state.airdrop_pot.str();
        j["tracker"] = result.state.airdrop_tracker;
        j["roundOver"] = result.state.round_over;
        write_output(outPath, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto& ev : result.trace)
            os << ev.step << " " << ponzi::sim::event_kind_name(ev.kind) << " " << ev.actor << " "
               << ev.amount.str() << "\n";
        os << "-- round --\n" << state.str();
        write_output(outPath, os.str());
    }
    return kExitOk;
}

int cmd_report(const std::string& inPath, const std::string& format, const std::string& outPath) {
    ponzi::ReportSummary summary = ponzi::summary_from_json(slurp(inPath));
    write_output(outPath, ponzi::emit(summary, ponzi::report_format_from_name(format)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ponziscan: classify, detect and simulate Ponzi-scheme smart contracts"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string outPath;

    // scan
    auto* scan = app.add_subcommand("scan", "Analyze every .sol file under a directory");
    std::string scanDir;
    unsigned parallel = 1;
    scan->add_option("dir", scanDir, "corpus directory")->required();
    scan->add_option("--format", format, "json|csv|text");
    scan->add_option("-o,--output", outPath, "output path (default stdout)");
    scan->add_option("--parallel", parallel, "worker threads")->check(CLI::Range(1u, 256u));

    // classify
    auto* classifyCmd = app.add_subcommand("classify", "Print the scheme class of files");
    std::vector<std::string> classifyPaths;
    classifyCmd->add_option("files", classifyPaths, "contract files")->required();

    // findings
    auto* findingsCmd = app.add_subcommand("findings", "Report vulnerability findings for files");
    std::vector<std::string> findingPaths;
    findingsCmd->add_option("files", findingPaths, "contract files")->required();
    findingsCmd->add_option("--format", format, "json|csv|text");
    findingsCmd->add_option("-o,--output", outPath, "output path (default stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a payout-semantics scenario script");
    std::string scheme, scriptPath, faithful = "on";
    std::string contribution, startingAmount, minDeposit;
    sim->add_option("--scheme", scheme, "tree|chain|waterfall|transfer")->required();
    sim->add_option("--script", scriptPath, "scenario script path")->required();
    sim->add_option("--format", format, "json|text");
    sim->add_option("-o,--output", outPath, "output path (default stdout)");
    sim->add_option("--faithful-bugs", faithful, "on|off: reproduce the stuck queue index (chain)");
    sim->add_option("--contribution", contribution, "tree minimum stake, e.g. 100finney");
    sim->add_option("--starting-amount", startingAmount, "transfer entry fee, e.g. 1ether");
    sim->add_option("--min-deposit", minDeposit, "chain minimum deposit, e.g. 500finney");

    // fomo3d
    auto* fomo = app.add_subcommand("fomo3d", "Run a key-game round script");
    std::string fomoScript, airdropThreshold;
    unsigned potShare = 0;
    fomo->add_option("--script", fomoScript, "round script path")->required();
    fomo->add_option("--format", format, "json|text");
    fomo->add_option("-o,--output", outPath, "output path (default stdout)");
    fomo->add_option("--airdrop-threshold", airdropThreshold,
                     "orders above this bump the airdrop tracker (default 0.1ether)");
    fomo->add_option("--pot-share", potShare, "pot percentage of the 86% bucket, 0..86");

    // report
    auto* report = app.add_subcommand("report", "Re-render a saved JSON report");
    std::string reportIn;
    report->add_option("input", reportIn, "report JSON path")->required();
    report->add_option("--format", format, "json|csv|text");
    report->add_option("-o,--output", outPath, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*scan) return cmd_scan(scanDir, format, outPath, parallel);
        if (*classifyCmd) return cmd_classify(classifyPaths);
        if (*findingsCmd) return cmd_findings(findingPaths, format, outPath);
        if (*sim) {
            if (faithful != "on" && faithful != "off") {
                std::cerr << "--faithful-bugs wants on or off\n";
                return kExitUsage;
            }
            return cmd_simulate(scheme, scriptPath, format, outPath, faithful == "on",
                                contribution, startingAmount, minDeposit);
        }
        if (*fomo) return cmd_fomo3d(fomoScript, format, outPath, airdropThreshold, potShare);
        if (*report) return cmd_report(reportIn, format, outPath);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ponzi::CorpusError& e) {
        std::cerr << "corpus error: " << e.what() << "\n";
        return e.kind == ponzi::CorpusError::Kind::EmptyCorpus ? kExitUsage : kExitIo;
    } catch (const ponzi::ReportError& e) {
        std::cerr << "report error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ponzi::sim::SimError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ponzi::AmountError& e) {
        std::cerr << "amount error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
