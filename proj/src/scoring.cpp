#include "ideaforge/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "ideaforge/convergence.hpp"
#include "ideaforge/error.hpp"

namespace ideaforge {

namespace {

double ratio(std::int64_t value, std::int64_t max) {
    return max == 0 ? 0.0 : static_cast<double>(value) / static_cast<double>(max);
}

// Totals within 1e-12 of each other rank as ties.
double rank_key(double total) { return std::round(total * 1e12); }

}  // namespace

std::vector<ScoreBreakdown> raw_components(const KnowledgeGraph& graph) {
    std::vector<ScoreBreakdown> rows;
    for (const auto& claim : graph.get_claims()) {
        ScoreBreakdown row;
        row.claim = claim.id;
        row.convergent_count = static_cast<std::int64_t>(graph.incident_edges(claim.id, EdgeType::Convergent).size());
        row.methodology_diversity = methodology_diversity(claim.id, graph);
        row.claim_strength = claim_strength(claim);
        row.prior_art_challenges = static_cast<std::int64_t>(graph.in_edges(claim.id, EdgeType::Challenges).size());
        rows.push_back(row);
    }
    return rows;
}

void normalise_and_total(std::vector<ScoreBreakdown>& rows, const ScoreWeights& w) {
    std::int64_t max_conv = 0, max_div = 0, max_chal = 0;
    for (const auto& r : rows) {
        max_conv = std::max(max_conv, r.convergent_count);
        max_div = std::max(max_div, r.methodology_diversity);
        max_chal = std::max(max_chal, r.prior_art_challenges);
    }
    for (auto& r : rows) {
        r.norm_convergent = ratio(r.convergent_count, max_conv);
        r.norm_diversity = ratio(r.methodology_diversity, max_div);
        r.norm_strength = r.claim_strength;
        r.norm_challenges = ratio(r.prior_art_challenges, max_chal);
        r.total = w.convergence * r.norm_convergent + w.diversity * r.norm_diversity + w.strength * r.norm_strength -
                  w.prior_art * r.norm_challenges;
    }
}

ScoreBreakdown innovation_score(NodeId claim, const KnowledgeGraph& graph, const ScoreWeights& weights) {
    auto node = graph.node(claim);
    if (node.label != NodeLabel::Claim)
        throw SchemaViolation(fmt::format("node {} is not a Claim", to_string(claim)));
    auto rows = raw_components(graph);
    normalise_and_total(rows, weights);
    return *std::find_if(rows.begin(), rows.end(), [&](const ScoreBreakdown& r) { return r.claim == claim; });
}

std::vector<ScoreBreakdown> rank_claims(const KnowledgeGraph& graph, const ScoreWeights& weights) {
    auto rows = raw_components(graph);
    if (rows.empty()) throw EmptyClaimSet("no claims to rank");
    normalise_and_total(rows, weights);
    std::stable_sort(rows.begin(), rows.end(), [](const ScoreBreakdown& a, const ScoreBreakdown& b) {
        auto ka = rank_key(a.total), kb = rank_key(b.total);
        if (ka != kb) return ka > kb;
        if (a.claim_strength != b.claim_strength) return a.claim_strength > b.claim_strength;
        return a.claim < b.claim;
    });
    return rows;
}

}  // namespace ideaforge
