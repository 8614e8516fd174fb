#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ideaforge/graph.hpp"
#include "ideaforge/llm.hpp"

namespace ideaforge::prior_art {

struct PriorArtRecord {
    std::string title;
    std::string abstract;
    std::string source;
    double similarity = 0.0;
};

/// First `max_terms` informative tokens of the idea, space separated.
/// Throws EmptyIdea when nothing informative remains.
std::string derive_query(std::string_view idea, std::size_t max_terms = 5);

/// arXiv API URL for an all-fields search.
std::string search_url(std::string_view endpoint, std::string_view query, std::size_t max_results);

/// Entries (title, summary, id) of an Atom 1.0 feed, at most max_results.
/// nullopt when the document is not well-formed XML or has no feed root.
std::optional<std::vector<PriorArtRecord>> parse_atom_feed(std::string_view xml, std::size_t max_results);

struct SearchConfig {
    enum class Mode { Offline, Fixture, Online };
    Mode mode = Mode::Offline;
    std::filesystem::path fixture;
    std::string endpoint = "http://export.arxiv.org/api/query";
    std::chrono::milliseconds timeout = std::chrono::seconds(30);
    /// Minimum spacing between live requests.
    std::chrono::milliseconds min_interval = std::chrono::seconds(3);
};

/// Never throws: offline mode, transport errors and unparseable feeds all
/// give an empty list (the latter two with a logged warning).
std::vector<PriorArtRecord> search(const std::string& query, std::size_t max_results, const SearchConfig& config);

struct AttachOptions {
    /// A CHALLENGES edge is created when Jaccard(record, claim) >= this.
    double challenge_threshold = 0.2;
    /// Optional model refinement of the record-vs-idea similarity.
    llm::TextGenerator* llm = nullptr;
    llm::GenerationRequest base_request{};
};

struct AttachResult {
    std::vector<NodeId> prior_art_ids;
    std::size_t challenges = 0;
};

/// Adds one PriorArt node per record, with similarity = Jaccard(title +
/// abstract, idea) unless the model returns a valid number in [0,1]. Sets
/// each record's similarity. Returns the created nodes and the number of
/// CHALLENGES edges.
AttachResult score_and_attach(std::span<PriorArtRecord> records, std::string_view idea, KnowledgeGraph& graph,
                              const AttachOptions& options = {});

}  // namespace ideaforge::prior_art
