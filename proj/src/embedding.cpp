#include "ideaforge/embedding.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>

#include "ideaforge/error.hpp"
#include "ideaforge/http.hpp"
#include "ideaforge/similarity_kernels.hpp"
#include "json.hpp"

namespace ideaforge {

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
    if (u.components.size() != v.components.size())
        throw DimensionMismatch(
            fmt::format("cosine of vectors with {} and {} components", u.components.size(), v.components.size()));
    auto zero = [](const std::vector<double>& x) {
        return std::all_of(x.begin(), x.end(), [](double c) { return c == 0.0; });
    };
    if (u.components.empty() || zero(u.components) || zero(v.components))
        throw ZeroVector("cosine is undefined for a zero vector");
    return kernels::cosine_unchecked(u.components, v.components);
}

StubEmbeddingProvider::StubEmbeddingProvider(std::map<std::string, std::vector<double>> table)
    : table_(std::move(table)) {}

std::unique_ptr<StubEmbeddingProvider> StubEmbeddingProvider::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure(fmt::format("cannot read embedding stub {}", path.string()));
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoFailure(fmt::format("embedding stub {} is not valid JSON: {}", path.string(), e.what()));
    }
    if (!doc.is_object()) throw IoFailure("embedding stub must map text to vectors");
    std::map<std::string, std::vector<double>> table;
    for (const auto& [text, vec] : doc.items()) {
        if (!vec.is_array()) throw IoFailure(fmt::format("embedding for '{}' is not an array", text));
        table[text] = vec.get<std::vector<double>>();
    }
    return std::make_unique<StubEmbeddingProvider>(std::move(table));
}

EmbeddingVector StubEmbeddingProvider::embed(const std::string& text) {
    auto it = table_.find(text);
    if (it == table_.end()) throw ProviderUnavailable(fmt::format("stub has no vector for '{}'", text));
    return {it->second, tag()};
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {}

EmbeddingVector HttpEmbeddingProvider::embed(const std::string& text) {
    if (auto it = cache_.find(text); it != cache_.end()) return {it->second, tag()};
    nlohmann::json body = {{"texts", {text}}};
    auto res = net::http_post_json(url_, body.dump(), timeout_);
    if (!res.ok) throw ProviderUnavailable("embedding service unreachable: " + res.error);
    if (res.status != 200) throw ProviderUnavailable(fmt::format("embedding service returned HTTP {}", res.status));
    try {
        auto doc = nlohmann::json::parse(res.body);
        auto vec = doc.at("vectors").at(0).get<std::vector<double>>();
        cache_[text] = vec;
        return {std::move(vec), tag()};
    } catch (const nlohmann::json::exception& e) {
        throw ProviderUnavailable(fmt::format("embedding service sent a bad body: {}", e.what()));
    }
}

}  // namespace ideaforge
