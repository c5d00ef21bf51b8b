// ponziscan: structural analysis and simulation of Ponzi-scheme smart contracts
// Copyright 2026 The ponziscan Authors.
// Licensed under the Apache License, Version 2.0.
#include "ponzi/corpus.hpp"

#include <doctest.h>

#include "test_util.hpp"

#include <fstream>

using namespace ponzi;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("ponzi-corpus-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int counter() {
        static int n = 0;
        return n++;
    }
    void write(const std::string& rel, const std::string& content) const {
        fs::path p = path / rel;
        fs::create_directories(p.parent_path());
        std::ofstream f(p, std::ios::binary);
        f << content;
    }
};

}  // namespace

TEST_CASE("two files load sorted by path") {
    TempDir dir;
    dir.write("b.sol", "contract B { }");
    dir.write("a.sol", "contract A { }");
    auto manifest = load_corpus(dir.path);
    REQUIRE(manifest.entries.size() == 2);
    CHECK(manifest.entries[0].path == "a.sol");
    CHECK(manifest.entries[1].path == "b.sol");
    CHECK(manifest.entries[0].parsed_ok);
    CHECK(manifest.entries[0].byte_size == 14);
}

TEST_CASE("byte-identical files collapse to the first path") {
    TempDir dir;
    dir.write("z.sol", "contract Twin { }");
    dir.write("a.sol", "contract Twin { }");
    dir.write("sub/deep.sol", "contract Other { }");
    auto manifest = load_corpus(dir.path);
    REQUIRE(manifest.entries.size() == 2);
    CHECK(manifest.entries[0].path == "a.sol");
    CHECK(manifest.entries[1].path == "sub/deep.sol");
}

TEST_CASE("invalid files stay in the manifest, marked unparsed") {
    TempDir dir;
    for (int i = 0; i < 7; ++i)
        dir.write("ok" + std::to_string(i) + ".sol",
                  "contract C" + std::to_string(i) + " { uint x; }");
    dir.write("bad1.sol", "contract {{{{");
    dir.write("bad2.sol", "uint floating = 1;");
    dir.write("bad3.sol", "contract X { function f( { }");
    auto manifest = load_corpus(dir.path);
    REQUIRE(manifest.entries.size() == 10);
    std::size_t failed = 0;
    for (const auto& e : manifest.entries)
        if (!e.parsed_ok) ++failed;
    CHECK(failed == 3);
}

TEST_CASE("non-sol files are ignored") {
    TempDir dir;
    dir.write("a.sol", "contract A { }");
    dir.write("README.md", "hello");
    dir.write("b.txt", "contract B { }");
    auto manifest = load_corpus(dir.path);
    CHECK(manifest.entries.size() == 1);
}

TEST_CASE("an unchanged directory loads byte-identically") {
    auto dir = test_util::fixture_dir() / "corpus";
    auto first = manifest_to_text(load_corpus(dir));
    auto second = manifest_to_text(load_corpus(dir));
    CHECK(first == second);
    CHECK_FALSE(first.empty());
}

TEST_CASE("the bundled fixture corpus has ten unique entries, one unparsable") {
    auto manifest = load_corpus(test_util::fixture_dir() / "corpus");
    REQUIRE(manifest.entries.size() == 10);
    std::size_t failed = 0;
    for (const auto& e : manifest.entries) {
        CHECK(e.content_hash.size() == 64);
        if (!e.parsed_ok) {
            ++failed;
            CHECK(e.path == "broken.sol");
        }
    }
    CHECK(failed == 1);
}

TEST_CASE("an empty or missing corpus is an error") {
    TempDir dir;
    dir.write("README.md", "no contracts here");
    CHECK_THROWS_AS(load_corpus(dir.path), CorpusError);
    CHECK_THROWS_AS(load_corpus(dir.path / "nope"), CorpusError);
}
