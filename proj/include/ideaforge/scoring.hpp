#pragma once

#include <cstdint>
#include <vector>

#include "ideaforge/graph.hpp"

namespace ideaforge {

/// InnovationScore weights: convergence and diversity reward, prior-art
/// challenges penalise.
struct ScoreWeights {
    double convergence = 0.4;
    double diversity = 0.3;
    double strength = 0.2;
    double prior_art = 0.1;
};

struct ScoreBreakdown {
    NodeId claim;
    std::int64_t convergent_count = 0;       // incident CONVERGENT edges
    std::int64_t methodology_diversity = 1;
    double claim_strength = 0.0;
    std::int64_t prior_art_challenges = 0;   // incident CHALLENGES edges

    // Each raw count divided by its maximum over the current claim set
    // (0 when that maximum is 0). Strength is already in [0,1].
    double norm_convergent = 0.0;
    double norm_diversity = 0.0;
    double norm_strength = 0.0;
    double norm_challenges = 0.0;

    double total = 0.0;
};

/// Breakdown for one claim, normalised against every claim in the graph.
/// Throws UnknownNode.
ScoreBreakdown innovation_score(NodeId claim, const KnowledgeGraph& graph, const ScoreWeights& weights = {});

/// All claims, best first. Ties (totals equal to 1e-12) go to the higher
/// strength, then to the earlier claim. Throws EmptyClaimSet.
std::vector<ScoreBreakdown> rank_claims(const KnowledgeGraph& graph, const ScoreWeights& weights = {});

/// Raw components gathered from the graph, in claim insertion order, before
/// normalisation.
std::vector<ScoreBreakdown> raw_components(const KnowledgeGraph& graph);

/// Fills the normalised components and totals in place.
void normalise_and_total(std::vector<ScoreBreakdown>& rows, const ScoreWeights& weights);

}  // namespace ideaforge
