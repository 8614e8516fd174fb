#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ideaforge/embedding.hpp"
#include "ideaforge/graph.hpp"

namespace ideaforge {

enum class SimilarityProvider { Embedding, Jaccard };

struct ConvergenceConfig {
    double theta = 0.65;
    SimilarityProvider provider = SimilarityProvider::Embedding;
    bool parallel = true;
};

struct ConvergentPair {
    NodeId claim_a;  // edge source: the claim whose methodology comes first
    NodeId claim_b;
    double similarity = 0.0;
    std::int64_t count = 1;
};

struct ConvergenceResult {
    std::vector<ConvergentPair> pairs;
    /// "embedding:<tag>" or "jaccard".
    std::string similarity_source;
    /// Embeddings were requested but the provider failed.
    bool fell_back = false;
};

/// One detection pass. Claims are grouped by methodology and only
/// cross-methodology pairs are compared; each pair reaching theta gets a
/// CONVERGENT edge (or its existing edge's count is incremented).
/// `embedder` may be null, which forces the Jaccard route.
ConvergenceResult detect_convergence(KnowledgeGraph& graph, const ConvergenceConfig& config,
                                     EmbeddingProvider* embedder = nullptr);

/// |{own methodology} ∪ {methodologies of CONVERGENT neighbours}|.
int methodology_diversity(NodeId claim, const KnowledgeGraph& graph);

/// Sum of `count` over the claim's CONVERGENT edges: how many detections
/// in total touched the claim, across passes.
std::int64_t convergence_total(NodeId claim, const KnowledgeGraph& graph);

/// CONVERGENT edges as pair records, in edge id order.
std::vector<ConvergentPair> convergent_pairs(const KnowledgeGraph& graph);

}  // namespace ideaforge
