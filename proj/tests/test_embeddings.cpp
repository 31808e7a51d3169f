#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ef/embedding.hpp"
#include "ef/errors.hpp"
#include "ef/rng.hpp"
#include "ef/text.hpp"

using namespace ef;

namespace {

struct TempFile {
    std::filesystem::path path;

    TempFile(const std::string& name, const std::string& content) {
        path = std::filesystem::temp_directory_path() / name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

Sentence make_sentence(const std::vector<std::string>& tokens) {
    Sentence s;
    for (const auto& t : tokens) s.words.push_back(Word{t, Pos::Other, false, false});
    return s;
}

} // namespace

TEST_CASE("cosine matches hand values and clamps degenerate input") {
    std::vector<double> x{1, 0}, y{0, 1}, nx{-1, 0}, zero{0, 0};
    CHECK(cosine(x, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine(x, y) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cosine(x, nx) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(cosine(x, zero) == 0.0);
    CHECK(cosine(zero, zero) == 0.0);
    CHECK_THROWS_AS(cosine(x, std::vector<double>{1, 2, 3}), DimensionMismatch);
}

TEST_CASE("cosine of a vector with itself is 1 within 1e-9") {
    SplitMix64 rng(201);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + int(rng.below(30));
        std::vector<double> v(n);
        bool nonzero = false;
        for (auto& x : v) {
            x = rng.uniform(-3.0, 3.0);
            if (std::abs(x) > 1e-6) nonzero = true;
        }
        if (!nonzero) v[0] = 1.0;
        CHECK(std::abs(cosine(v, v) - 1.0) < 1e-9);
        CHECK(cosine(v, v) <= 1.0);
    }
}

TEST_CASE("embedding tables load with and without a count header") {
    TempFile with_header("ef_emb_header.txt",
                         "2 3\n"
                         "Alpha 1 0 0\n"
                         "beta 0 1 0\n");
    auto table = EmbeddingTable::load(with_header.path.string());
    CHECK(table.size() == 2);
    CHECK(table.dim() == 3);
    CHECK(table.contains("alpha"));    // tokens lowercase on load
    CHECK_FALSE(table.contains("Alpha"));
    CHECK(table.vector_of("beta")[1] == doctest::Approx(1.0));

    TempFile without_header("ef_emb_plain.txt",
                            "alpha 1 0\n"
                            "beta 0 1\n"
                            "gamma 1 1\n");
    auto plain = EmbeddingTable::load(without_header.path.string());
    CHECK(plain.size() == 3);
    CHECK(plain.dim() == 2);
}

TEST_CASE("embedding table load rejects malformed files") {
    TempFile ragged("ef_emb_ragged.txt", "alpha 1 0\nbeta 0 1 7\n");
    CHECK_THROWS_AS(EmbeddingTable::load(ragged.path.string()), ParseError);

    TempFile duplicate("ef_emb_dup.txt", "alpha 1 0\nALPHA 0 1\n");
    CHECK_THROWS_AS(EmbeddingTable::load(duplicate.path.string()), ParseError);

    TempFile empty("ef_emb_empty.txt", "");
    CHECK_THROWS_AS(EmbeddingTable::load(empty.path.string()), ParseError);

    TempFile bad_count("ef_emb_count.txt", "3 2\nalpha 1 0\nbeta 0 1\n");
    CHECK_THROWS_AS(EmbeddingTable::load(bad_count.path.string()), ParseError);

    TempFile bad_value("ef_emb_value.txt", "alpha 1 zebra\n");
    CHECK_THROWS_AS(EmbeddingTable::load(bad_value.path.string()), ParseError);

    CHECK_THROWS_AS(EmbeddingTable::load("/nonexistent/embeddings.txt"), IoError);
    CHECK_THROWS_AS(EmbeddingTable::from_entries({}), ParseError);
}

TEST_CASE("ragged load errors name the offending line") {
    TempFile ragged("ef_emb_ragged_line.txt", "alpha 1 0\nbeta 0 1 7\n");
    try {
        EmbeddingTable::load(ragged.path.string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("nearest neighbors ranks by cosine and never returns the query") {
    auto table = EmbeddingTable::from_entries({
        {"a", {1.0, 0.0}},
        {"b", {0.9, 0.1}},
        {"c", {-1.0, 0.0}},
        {"d", {0.0, 1.0}},
    });
    auto nn = table.nearest_neighbors("a", 2);
    REQUIRE(nn.size() == 2);
    CHECK(nn[0].first == "b");
    CHECK(nn[0].second == doctest::Approx(0.9 / std::sqrt(0.81 + 0.01)).epsilon(1e-12));
    CHECK(nn[1].first == "d");
    CHECK(nn[1].second == doctest::Approx(0.0).epsilon(1e-12));

    auto all = table.nearest_neighbors("a", 99);  // k clamps to vocab - 1
    REQUIRE(all.size() == 3);
    CHECK(all[2].first == "c");
    CHECK(all[2].second == doctest::Approx(-1.0));
}

TEST_CASE("nearest neighbor exact ties order lexicographically") {
    auto table = EmbeddingTable::from_entries({
        {"p", {1.0, 0.0}},
        {"r", {0.0, 1.0}},
        {"q", {0.0, 2.0}},     // same direction as r: identical cosine to p
    });
    auto nn = table.nearest_neighbors("p", 2);
    REQUIRE(nn.size() == 2);
    CHECK(nn[0].first == "q");
    CHECK(nn[1].first == "r");
    CHECK(nn[0].second == doctest::Approx(nn[1].second));
}

TEST_CASE("nearest neighbors rejects bad queries") {
    auto table = EmbeddingTable::from_entries({{"a", {1.0}}, {"b", {2.0}}});
    CHECK_THROWS_AS(table.nearest_neighbors("missing", 1), UnknownWord);
    CHECK_THROWS_AS(table.nearest_neighbors("a", 0), Error);
    CHECK_THROWS_AS(table.vector_of("missing"), UnknownWord);
}

TEST_CASE("nearest neighbor similarities are non-increasing") {
    SplitMix64 rng(202);
    std::vector<std::pair<std::string, std::vector<double>>> entries;
    for (int i = 0; i < 40; ++i) {
        std::vector<double> v(6);
        for (auto& x : v) x = rng.uniform(-1.0, 1.0);
        entries.emplace_back("w" + std::to_string(i), v);
    }
    auto table = EmbeddingTable::from_entries(entries);
    for (int i = 0; i < 40; ++i) {
        auto nn = table.nearest_neighbors("w" + std::to_string(i), 40);
        CHECK(nn.size() == 39);
        for (std::size_t j = 0; j + 1 < nn.size(); ++j) CHECK(nn[j].second >= nn[j + 1].second);
        for (const auto& [tok, sim] : nn) {
            CHECK(tok != "w" + std::to_string(i));
            CHECK(sim >= -1.0);
            CHECK(sim <= 1.0);
        }
    }
}

TEST_CASE("sentence embedding averages in-vocabulary words") {
    auto table = EmbeddingTable::from_entries({
        {"good", {1.0, 0.0}},
        {"movie", {0.0, 1.0}},
    });
    auto single = sentence_embedding(make_sentence({"good"}), table);
    CHECK(single.values == std::vector<double>{1.0, 0.0});

    auto mean = sentence_embedding(make_sentence({"good", "movie"}), table);
    CHECK(mean.values[0] == doctest::Approx(0.5));
    CHECK(mean.values[1] == doctest::Approx(0.5));

    // OOV words are skipped, not averaged as zeros.
    auto skip = sentence_embedding(make_sentence({"good", "zzz", "movie"}), table);
    CHECK(skip.values[0] == doctest::Approx(0.5));
    CHECK(skip.values[1] == doctest::Approx(0.5));

    CHECK_THROWS_AS(sentence_embedding(make_sentence({"zzz", "yyy"}), table), AllWordsOOV);
}

TEST_CASE("sentence embedding is invariant under word order") {
    SplitMix64 rng(203);
    std::vector<std::pair<std::string, std::vector<double>>> entries;
    for (int i = 0; i < 12; ++i) {
        std::vector<double> v(5);
        for (auto& x : v) x = rng.uniform(-1.0, 1.0);
        entries.emplace_back("w" + std::to_string(i), v);
    }
    auto table = EmbeddingTable::from_entries(entries);

    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> tokens;
        const int n = 2 + int(rng.below(8));
        for (int i = 0; i < n; ++i) tokens.push_back("w" + std::to_string(rng.below(12)));
        auto base = sentence_embedding(make_sentence(tokens), table);
        auto shuffled = tokens;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        auto perm = sentence_embedding(make_sentence(shuffled), table);
        for (int d = 0; d < 5; ++d)
            CHECK(base.values[d] == doctest::Approx(perm.values[d]).epsilon(1e-12));
    }
}

TEST_CASE("table indexing accessors agree with each other") {
    auto table = EmbeddingTable::from_entries({{"a", {1.0, 2.0}}, {"b", {3.0, 4.0}}});
    REQUIRE(table.size() == 2);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& tok = table.token_at(i);
        auto direct = table.vector_at(i);
        auto named = table.vector_of(tok);
        REQUIRE(direct.size() == named.size());
        for (std::size_t d = 0; d < direct.size(); ++d) CHECK(direct[d] == named[d]);
    }
}
