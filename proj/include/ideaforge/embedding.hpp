#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ideaforge {

struct EmbeddingVector {
    std::vector<double> components;
    std::string provider_tag;

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

/// Throws DimensionMismatch or ZeroVector.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::string tag() const = 0;
    /// Same text must always yield the same vector. Throws ProviderUnavailable.
    virtual EmbeddingVector embed(const std::string& text) = 0;
};

/// Fixed text -> vector table, used for fixtures. Unknown text is
/// ProviderUnavailable.
class StubEmbeddingProvider : public EmbeddingProvider {
public:
    explicit StubEmbeddingProvider(std::map<std::string, std::vector<double>> table);
    /// JSON object {"claim text": [numbers...], ...}. Throws IoFailure.
    static std::unique_ptr<StubEmbeddingProvider> from_file(const std::filesystem::path& path);

    std::string tag() const override { return "stub"; }
    EmbeddingVector embed(const std::string& text) override;

private:
    std::map<std::string, std::vector<double>> table_;
};

/// Remote service: POST {texts:[...]} -> {vectors:[[...]]}. Vectors are
/// cached per text so repeated calls are bitwise stable within a run.
class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HttpEmbeddingProvider(std::string url,
                                   std::chrono::milliseconds timeout = std::chrono::seconds(30));

    std::string tag() const override { return "http:" + url_; }
    EmbeddingVector embed(const std::string& text) override;

private:
    std::string url_;
    std::chrono::milliseconds timeout_;
    std::map<std::string, std::vector<double>> cache_;
};

}  // namespace ideaforge
