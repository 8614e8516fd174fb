#include <algorithm>
#include <set>

#include "doctest.h"
#include "ideaforge/embedding.hpp"
#include "ideaforge/error.hpp"
#include "ideaforge/similarity_kernels.hpp"
#include "ideaforge/text.hpp"
#include "support.hpp"

using namespace ideaforge;

TEST_CASE("tokenizer lowercases and splits on non-alphanumerics") {
    auto t = text::tokenize("Voice-first, LEGAL assistant (v2)!");
    CHECK(t == std::vector<std::string>{"voice", "first", "legal", "assistant", "v2"});
    CHECK(text::token_set("b a b") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("jaccard examples") {
    CHECK(text::jaccard("voice legal assistant", "voice legal aid") == 0.5);
    CHECK(text::jaccard("same words here", "same words here") == 1.0);
    CHECK(text::jaccard("", "x") == 0.0);
    CHECK(text::jaccard("", "") == 1.0);
    CHECK(text::jaccard("!!", "x") == 0.0);
}

TEST_CASE("informative tokens drop stopwords and keep order") {
    CHECK(text::informative_tokens(testing::kLegalIdea, 5) ==
          std::vector<std::string>{"voice", "first", "legal", "assistant", "hindi"});
    CHECK(text::is_stopword("the"));
    CHECK_FALSE(text::is_stopword("legal"));
    auto words = text::stopwords();
    CHECK(words.size() == 54);
    CHECK(std::set<std::string_view>(words.begin(), words.end()).size() == words.size());
}

TEST_CASE("cosine examples") {
    EmbeddingVector u{{1, 2, 3}, "t"}, v{{4, 5, 6}, "t"};
    CHECK(cosine(u, v) == doctest::Approx(0.974631846).epsilon(1e-9));
    CHECK(cosine(u, u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine({{1, 0}, "t"}, {{0, 1}, "t"}) == 0.0);
    CHECK_THROWS_AS(cosine({{1, 0}, "t"}, {{1, 0, 0}, "t"}), DimensionMismatch);
    CHECK_THROWS_AS(cosine({{0, 0}, "t"}, {{1, 0}, "t"}), ZeroVector);
}

TEST_CASE("stub embedding provider is deterministic") {
    StubEmbeddingProvider stub({{"hello", {0.1, 0.2}}});
    CHECK(stub.embed("hello") == stub.embed("hello"));
    CHECK(stub.embed("hello").components == std::vector<double>{0.1, 0.2});
    CHECK_THROWS_AS(stub.embed("unknown"), ProviderUnavailable);
}

TEST_CASE("parallel kernels match the serial reference exactly") {
    std::mt19937 rng(11);
    std::normal_distribution<double> gauss;
    const std::uint32_t n = 60;
    std::vector<std::vector<double>> vecs(n, std::vector<double>(16));
    for (auto& v : vecs)
        for (auto& x : v) x = gauss(rng);
    std::vector<std::vector<std::string>> sets(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::string s;
        for (int k = 0; k < 8; ++k) s += "w" + std::to_string(rng() % 30) + " ";
        sets[i] = text::token_set(s);
    }
    std::vector<kernels::IndexPair> pairs;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b) pairs.push_back({a, b});
    std::vector<double> s(pairs.size()), p(pairs.size());
    kernels::pairwise_cosine_serial(vecs, pairs, s);
    kernels::pairwise_cosine_parallel(vecs, pairs, p);
    CHECK(s == p);
    kernels::pairwise_jaccard_serial(sets, pairs, s);
    kernels::pairwise_jaccard_parallel(sets, pairs, p);
    CHECK(s == p);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        REQUIRE(s[i] == text::jaccard_sets(sets[pairs[i].a], sets[pairs[i].b]));
}
