#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ideaforge/graph.hpp"
#include "ideaforge/llm.hpp"

namespace ideaforge::agents {

struct AgentReport {
    Methodology methodology = Methodology::Triz;
    std::vector<NodeId> created_node_ids;
    std::vector<EdgeId> created_edge_ids;
    /// Any deterministic default was used, for the whole output or one item.
    bool used_fallback = false;
    /// Why the model output was not (fully) used; empty otherwise.
    std::string fallback_reason;
    NodeId claim_id;
};

/// Seven SCAMPER operations, in checklist order.
inline constexpr std::array<std::string_view, 7> kScamperTypes = {
    "Substitute", "Combine", "Adapt", "Modify", "PutToOtherUses", "Eliminate", "Reverse"};

/// Canonical name of TRIZ inventive principle 1..40; empty outside that range.
std::string_view triz_principle_name(int number);

/// Maps free-form SCAMPER labels ("Put to other uses", "magnify") onto
/// kScamperTypes; empty when unrecognised.
std::string_view normalise_scamper_type(std::string_view label);

/// First eight informative tokens of the idea, space separated. Fallback
/// texts are templated from it.
std::string idea_phrase(std::string_view idea);

/// Step one of the pipeline: the Problem node.
NodeId create_problem(KnowledgeGraph& graph, std::string_view idea, std::string_view domain);

// Each agent checks that `problem` is a Problem node (UnknownNode otherwise),
// asks the model for JSON, repairs or replaces whatever is unusable with
// deterministic defaults, and writes exactly one Claim.

/// 1 Contradiction, 2 Principles, 1 Claim; HAS_CONTRADICTION, 2 RESOLVED_BY,
/// 2 SUPPORTS.
AgentReport run_triz(std::string_view idea, NodeId problem, KnowledgeGraph& graph, llm::TextGenerator& llm,
                     const llm::GenerationRequest& base = {});

/// 2 UserNeeds on the model path, 1 on the fallback path, each MOTIVATES the
/// Problem; 1 Claim carrying How-Might-We questions in its `hmw` property.
AgentReport run_design_thinking(std::string_view idea, NodeId problem, KnowledgeGraph& graph,
                                llm::TextGenerator& llm, const llm::GenerationRequest& base = {});

/// 3 Transformations with distinct types, 1 Claim, 1 GENERATES edge from the
/// most promising transformation.
AgentReport run_scamper(std::string_view idea, NodeId problem, KnowledgeGraph& graph, llm::TextGenerator& llm,
                        const llm::GenerationRequest& base = {});

}  // namespace ideaforge::agents
