#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "ideaforge/schema.hpp"

namespace ideaforge {

struct Node {
    NodeId id;
    NodeLabel label = NodeLabel::Problem;
    Properties properties;

    /// String property; empty string when absent or not a string.
    std::string text(std::string_view key) const;
    std::optional<double> number(std::string_view key) const;

    friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
    EdgeId id;
    NodeId src;
    NodeId dst;
    EdgeType type = EdgeType::HasContradiction;
    Properties properties;

    /// For CONVERGENT edges, which are queried as undirected.
    NodeId other_end(NodeId from) const { return from == src ? dst : src; }

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Claim accessors. The node must be a Claim; validation on insert
// guarantees the properties exist.
std::string claim_text(const Node& claim);
Methodology claim_methodology(const Node& claim);
double claim_strength(const Node& claim);

struct GraphSummary {
    std::map<NodeLabel, std::size_t> node_counts;
    std::map<EdgeType, std::size_t> edge_counts;
    std::size_t total_nodes = 0;
    std::size_t total_edges = 0;

    std::size_t count(NodeLabel label) const;
    std::size_t count(EdgeType type) const;
    friend bool operator==(const GraphSummary&, const GraphSummary&) = default;
};

/// Plain value copy of a graph: nodes and edges keyed by id, ascending id
/// order equals insertion order.
struct GraphData {
    std::map<NodeId, Node> nodes;
    std::map<EdgeId, Edge> edges;

    friend bool operator==(const GraphData&, const GraphData&) = default;
};

struct Subgraph {
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    bool contains(NodeId id) const;
    std::size_t count(NodeLabel label) const;
};

/// In-process property graph restricted to the IdeaForge schema.
///
/// Readers take a shared lock, every mutation takes the exclusive lock, so an
/// instance can be shared across threads. All queries return copies.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;
    explicit KnowledgeGraph(GraphData data);
    KnowledgeGraph(const KnowledgeGraph& other);
    KnowledgeGraph& operator=(const KnowledgeGraph& other);

    NodeId create_node(NodeLabel label, Properties properties);

    /// For CONVERGENT edges an existing edge on the same unordered claim pair
    /// has its count incremented (and similarity refreshed) and its id returned.
    EdgeId create_edge(NodeId src, NodeId dst, EdgeType type, Properties properties = {});

    /// Removes the node together with every incident edge.
    void remove_node(NodeId id);

    std::optional<Node> find_node(NodeId id) const;
    Node node(NodeId id) const;
    std::optional<Edge> find_edge(EdgeId id) const;

    std::vector<Node> nodes(std::optional<NodeLabel> label = std::nullopt) const;
    std::vector<Node> get_claims(std::optional<Methodology> methodology = std::nullopt) const;
    std::vector<Edge> edges(std::optional<EdgeType> type = std::nullopt) const;

    std::vector<Edge> in_edges(NodeId id, std::optional<EdgeType> type = std::nullopt) const;
    std::vector<Edge> out_edges(NodeId id, std::optional<EdgeType> type = std::nullopt) const;
    /// Both directions; the natural view for CONVERGENT edges.
    std::vector<Edge> incident_edges(NodeId id, std::optional<EdgeType> type = std::nullopt) const;

    std::optional<Edge> convergent_edge(NodeId a, NodeId b) const;

    /// The claim plus everything that grounds it: principles, contradictions
    /// and problems reached against SUPPORTS / RESOLVED_BY / HAS_CONTRADICTION,
    /// transformations against GENERATES, the claim's originating problem
    /// (its `problem_id` property) and every UserNeed motivating a reached
    /// problem.
    Subgraph get_supporting_subgraph(NodeId claim) const;

    GraphSummary summary() const;

    /// Consistent copy taken under one read lock.
    GraphData data() const;
    void replace(GraphData data);

private:
    using PairKey = std::pair<std::uint64_t, std::uint64_t>;

    void rebuild_indexes();
    const Node& node_locked(NodeId id) const;
    void validate_edge_locked(const Node& src, const Node& dst, EdgeType type,
                              const Properties& properties) const;
    std::vector<Edge> collect_locked(const std::vector<EdgeId>& ids,
                                     std::optional<EdgeType> type) const;

    mutable std::shared_mutex mutex_;
    GraphData data_;
    std::uint64_t next_node_ = 1;
    std::uint64_t next_edge_ = 1;
    std::map<NodeId, std::vector<EdgeId>> out_;
    std::map<NodeId, std::vector<EdgeId>> in_;
    std::map<PairKey, EdgeId> convergent_pairs_;
};

/// Id a claim was created under (the `problem_id` property), if any.
std::optional<NodeId> origin_problem(const Node& claim);

/// Parses the decimal string form used in exports.
std::optional<NodeId> parse_node_id(std::string_view text);

}  // namespace ideaforge
