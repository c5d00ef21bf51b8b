// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/corpus.hpp"

#include "ponzi/hash.hpp"
#include "ponzi/sol/parser.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ponzi {

namespace fs = std::filesystem;

namespace {

bool read_file(const fs::path& p, std::string& out) {
    std::ifstream f(p, std::ios::binary);
    if (!f) return false;
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) return false;
    out = ss.str();
    return true;
}

bool parses(const std::string& source) {
    try {
        sol::parse(source);
        return true;
    } catch (const sol::ParseError&) {
        return false;
    } catch (const sol::LexError&) {
        return false;
    }
}

}  // namespace

CorpusManifest load_corpus(const fs::path& rootDir) {
    std::error_code ec;
    if (!fs::is_directory(rootDir, ec))
        throw CorpusError(CorpusError::Kind::BadRoot,
                          "corpus root is not a readable directory: " + rootDir.string());

    CorpusManifest manifest;
    manifest.root = rootDir.generic_string();

    std::vector<fs::path> files;
    for (fs::recursive_directory_iterator it(rootDir, fs::directory_options::skip_permission_denied, ec), end;
         it != end; it.increment(ec)) {
        if (ec) break;
        if (it->is_regular_file(ec) && it->path().extension() == ".sol")
            files.push_back(it->path());
    }

    std::vector<std::pair<std::string, fs::path>> byRel;
    byRel.reserve(files.size());
    for (const auto& p : files)
        byRel.emplace_back(fs::relative(p, rootDir).generic_string(), p);
    std::sort(byRel.begin(), byRel.end());

    std::set<std::string> seenHashes;
    for (const auto& [rel, full] : byRel) {
        std::string source;
        if (!read_file(full, source)) {
            manifest.notes.push_back("unreadable: " + rel);
            continue;
        }
        std::string hash = sha256_hex(source);
        if (!seenHashes.insert(hash).second) continue;  // duplicate content, first path wins
        CorpusEntry entry;
        entry.path = rel;
        entry.content_hash = std::move(hash);
        entry.byte_size = source.size();
        entry.parsed_ok = parses(source);
        manifest.entries.push_back(std::move(entry));
    }

    if (manifest.entries.empty() && manifest.notes.empty())
        throw CorpusError(CorpusError::Kind::EmptyCorpus,
                          "no .sol files under " + rootDir.string());
    return manifest;
}

std::string manifest_to_text(const CorpusManifest& manifest) {
    std::ostringstream os;
    os << "corpus " << manifest.root << " files " << manifest.entries.size() << "\n";
    for (const auto& e : manifest.entries)
        os << e.content_hash << " " << e.byte_size << " " << (e.parsed_ok ? "ok" : "parsefail")
           << " " << e.path << "\n";
    for (const auto& n : manifest.notes) os << "note " << n << "\n";
    return os.str();
}

}  // namespace ponzi
