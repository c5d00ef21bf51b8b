// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ponzi {

struct CorpusError : std::runtime_error {
    enum class Kind { EmptyCorpus, BadRoot };
    CorpusError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
    Kind kind;
};

struct CorpusEntry {
    std::string path;         // relative to the corpus root, '/'-separated
    std::string content_hash;  // SHA-256 hex
    std::uint64_t byte_size = 0;
    bool parsed_ok = false;
};

/// Deduplicated, path-sorted view of every .sol file under a directory.
/// Content duplicates keep only the lexicographically first path.
struct CorpusManifest {
    std::string root;
    std::vector<CorpusEntry> entries;
    std::vector<std::string> notes;  // unreadable files and similar non-fatal trouble
};

/// Recursively collects .sol files. Throws CorpusError when the root is
/// missing or no .sol file exists; unreadable files become notes.
CorpusManifest load_corpus(const std::filesystem::path& rootDir);

/// Stable text rendering, one entry per line.
std::string manifest_to_text(const CorpusManifest& manifest);

/// Seam for plugging a remote source in front of load_corpus. The toolkit
/// ships no network implementation.
class SourceFetcher {
public:
    virtual ~SourceFetcher() = default;
    /// Materialize remote contract sources below destDir and return how many
    /// files were written.
    virtual std::size_t fetch_into(const std::filesystem::path& destDir) = 0;
};

}  // namespace ponzi
