#include "ideaforge/convergence.hpp"

#include <set>
#include <spdlog/spdlog.h>

#include "ideaforge/error.hpp"
#include "ideaforge/similarity_kernels.hpp"
#include "ideaforge/text.hpp"

namespace ideaforge {

namespace {

struct Candidates {
    std::vector<Node> claims;
    std::vector<kernels::IndexPair> pairs;
};

Candidates cross_methodology_pairs(const KnowledgeGraph& graph) {
    Candidates c;
    std::vector<std::vector<std::uint32_t>> groups(kAllMethodologies.size());
    for (auto& claim : graph.get_claims()) {
        groups[static_cast<std::size_t>(claim_methodology(claim))].push_back(
            static_cast<std::uint32_t>(c.claims.size()));
        c.claims.push_back(std::move(claim));
    }
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            for (auto a : groups[i])
                for (auto b : groups[j]) c.pairs.push_back({a, b});
    return c;
}

bool embed_all(EmbeddingProvider& embedder, const std::vector<Node>& claims, std::vector<std::vector<double>>& out) {
    try {
        out.clear();
        for (const auto& claim : claims) {
            auto v = embedder.embed(claim_text(claim));
            if (!out.empty() && v.components.size() != out.front().size())
                throw DimensionMismatch("embedding length changed within a run");
            cosine(v, v);  // rejects zero vectors
            out.push_back(std::move(v.components));
        }
        return true;
    } catch (const Error& e) {
        spdlog::warn("embedding provider {} failed ({}); falling back to Jaccard similarity", embedder.tag(),
                     e.what());
        return false;
    }
}

}  // namespace

ConvergenceResult detect_convergence(KnowledgeGraph& graph, const ConvergenceConfig& config,
                                     EmbeddingProvider* embedder) {
    ConvergenceResult result;
    auto cand = cross_methodology_pairs(graph);
    std::vector<double> sims(cand.pairs.size());

    bool use_embedding = config.provider == SimilarityProvider::Embedding && embedder != nullptr;
    std::vector<std::vector<double>> vectors;
    if (use_embedding && !embed_all(*embedder, cand.claims, vectors)) {
        use_embedding = false;
        result.fell_back = true;
    }
    if (config.provider == SimilarityProvider::Embedding && embedder == nullptr) result.fell_back = true;

    if (use_embedding) {
        result.similarity_source = "embedding:" + embedder->tag();
        if (config.parallel)
            kernels::pairwise_cosine_parallel(vectors, cand.pairs, sims);
        else
            kernels::pairwise_cosine_serial(vectors, cand.pairs, sims);
    } else {
        result.similarity_source = "jaccard";
        std::vector<std::vector<std::string>> sets;
        sets.reserve(cand.claims.size());
        for (const auto& claim : cand.claims) sets.push_back(text::token_set(claim_text(claim)));
        if (config.parallel)
            kernels::pairwise_jaccard_parallel(sets, cand.pairs, sims);
        else
            kernels::pairwise_jaccard_serial(sets, cand.pairs, sims);
    }

    // Edge writes stay serial and in candidate order.
    for (std::size_t k = 0; k < cand.pairs.size(); ++k) {
        if (!(sims[k] >= config.theta)) continue;
        const auto& a = cand.claims[cand.pairs[k].a];
        const auto& b = cand.claims[cand.pairs[k].b];
        double stored = std::min(sims[k], 1.0);
        auto edge_id = graph.create_edge(a.id, b.id, EdgeType::Convergent, {{"similarity", stored}});
        auto edge = graph.find_edge(edge_id);
        result.pairs.push_back({edge->src, edge->dst, stored,
                                static_cast<std::int64_t>(as_number(edge->properties.at("count")).value_or(1))});
    }
    return result;
}

int methodology_diversity(NodeId claim, const KnowledgeGraph& graph) {
    auto self = graph.node(claim);
    if (self.label != NodeLabel::Claim) throw SchemaViolation("methodology diversity needs a Claim node");
    std::set<Methodology> seen{claim_methodology(self)};
    for (const auto& e : graph.incident_edges(claim, EdgeType::Convergent))
        seen.insert(claim_methodology(graph.node(e.other_end(claim))));
    return static_cast<int>(seen.size());
}

std::int64_t convergence_total(NodeId claim, const KnowledgeGraph& graph) {
    std::int64_t total = 0;
    for (const auto& e : graph.incident_edges(claim, EdgeType::Convergent))
        total += static_cast<std::int64_t>(as_number(e.properties.at("count")).value_or(1));
    return total;
}

std::vector<ConvergentPair> convergent_pairs(const KnowledgeGraph& graph) {
    std::vector<ConvergentPair> out;
    for (const auto& e : graph.edges(EdgeType::Convergent))
        out.push_back({e.src, e.dst, as_number(e.properties.at("similarity")).value_or(0.0),
                       static_cast<std::int64_t>(as_number(e.properties.at("count")).value_or(1))});
    return out;
}

}  // namespace ideaforge
