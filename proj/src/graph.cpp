#include "ideaforge/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <mutex>
#include <set>

#include "ideaforge/error.hpp"

namespace ideaforge {

std::string Node::text(std::string_view key) const {
    auto it = properties.find(key);
    if (it == properties.end()) return {};
    if (auto* s = std::get_if<std::string>(&it->second)) return *s;
    return {};
}

std::optional<double> Node::number(std::string_view key) const {
    auto it = properties.find(key);
    if (it == properties.end()) return std::nullopt;
    return as_number(it->second);
}

std::string claim_text(const Node& claim) { return claim.text("text"); }

Methodology claim_methodology(const Node& claim) {
    auto m = parse_methodology(claim.text("methodology"));
    if (!m) throw SchemaViolation(fmt::format("node {} is not a valid Claim", to_string(claim.id)));
    return *m;
}

double claim_strength(const Node& claim) { return claim.number("strength").value_or(0.0); }

std::optional<NodeId> parse_node_id(std::string_view text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v == 0) return std::nullopt;
    return NodeId{v};
}

std::optional<NodeId> origin_problem(const Node& claim) {
    auto it = claim.properties.find("problem_id");
    if (it == claim.properties.end()) return std::nullopt;
    if (auto* s = std::get_if<std::string>(&it->second)) return parse_node_id(*s);
    if (auto* i = std::get_if<std::int64_t>(&it->second); i && *i > 0)
        return NodeId{static_cast<std::uint64_t>(*i)};
    return std::nullopt;
}

std::size_t GraphSummary::count(NodeLabel label) const {
    auto it = node_counts.find(label);
    return it == node_counts.end() ? 0 : it->second;
}

std::size_t GraphSummary::count(EdgeType type) const {
    auto it = edge_counts.find(type);
    return it == edge_counts.end() ? 0 : it->second;
}

bool Subgraph::contains(NodeId id) const {
    return std::any_of(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == id; });
}

std::size_t Subgraph::count(NodeLabel label) const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.label == label; }));
}

KnowledgeGraph::KnowledgeGraph(GraphData data) { replace(std::move(data)); }

KnowledgeGraph::KnowledgeGraph(const KnowledgeGraph& other) { replace(other.data()); }

KnowledgeGraph& KnowledgeGraph::operator=(const KnowledgeGraph& other) {
    if (this != &other) replace(other.data());
    return *this;
}

const Node& KnowledgeGraph::node_locked(NodeId id) const {
    auto it = data_.nodes.find(id);
    if (it == data_.nodes.end()) throw UnknownNode(fmt::format("no node with id {}", to_string(id)));
    return it->second;
}

NodeId KnowledgeGraph::create_node(NodeLabel label, Properties properties) {
    validate_node_properties(label, properties);
    std::unique_lock lock(mutex_);
    NodeId id{next_node_++};
    data_.nodes.emplace(id, Node{id, label, std::move(properties)});
    return id;
}

void KnowledgeGraph::validate_edge_locked(const Node& src, const Node& dst, EdgeType type,
                                          const Properties& properties) const {
    if (!edge_allowed(src.label, dst.label, type)) {
        auto ends = endpoints_of(type);
        throw SchemaViolation(fmt::format("{} must connect {} -> {}, got {} -> {}", to_string(type),
                                          to_string(ends.src), to_string(ends.dst), to_string(src.label),
                                          to_string(dst.label)));
    }
    if (type != EdgeType::Convergent) return;
    if (src.id == dst.id) throw SchemaViolation("CONVERGENT edge cannot be a self-loop");
    if (claim_methodology(src) == claim_methodology(dst))
        throw SchemaViolation(fmt::format("CONVERGENT edge requires distinct methodologies, both are {}",
                                          to_string(claim_methodology(src))));
    auto sim = properties.find("similarity");
    if (sim == properties.end()) throw SchemaViolation("CONVERGENT edge requires a similarity property");
    auto s = as_number(sim->second);
    if (!s || !(*s >= 0.0 && *s <= 1.0)) throw SchemaViolation("CONVERGENT similarity must lie in [0,1]");
    if (auto c = properties.find("count"); c != properties.end()) {
        auto n = as_number(c->second);
        if (!n || *n < 1.0) throw SchemaViolation("CONVERGENT count must be >= 1");
    }
}

EdgeId KnowledgeGraph::create_edge(NodeId src, NodeId dst, EdgeType type, Properties properties) {
    std::unique_lock lock(mutex_);
    const Node& a = node_locked(src);
    const Node& b = node_locked(dst);
    validate_edge_locked(a, b, type, properties);

    if (type == EdgeType::Convergent) {
        PairKey key{std::min(src.value, dst.value), std::max(src.value, dst.value)};
        if (auto it = convergent_pairs_.find(key); it != convergent_pairs_.end()) {
            Edge& existing = data_.edges.at(it->second);
            auto count = as_number(existing.properties["count"]).value_or(1.0);
            existing.properties["count"] = static_cast<std::int64_t>(count) + 1;
            existing.properties["similarity"] = properties.at("similarity");
            return existing.id;
        }
        if (!properties.contains("count")) properties["count"] = std::int64_t{1};
        EdgeId id{next_edge_++};
        convergent_pairs_.emplace(key, id);
        data_.edges.emplace(id, Edge{id, src, dst, type, std::move(properties)});
        out_[src].push_back(id);
        in_[dst].push_back(id);
        return id;
    }

    EdgeId id{next_edge_++};
    data_.edges.emplace(id, Edge{id, src, dst, type, std::move(properties)});
    out_[src].push_back(id);
    in_[dst].push_back(id);
    return id;
}

void KnowledgeGraph::remove_node(NodeId id) {
    std::unique_lock lock(mutex_);
    node_locked(id);
    data_.nodes.erase(id);
    std::erase_if(data_.edges, [&](const auto& kv) { return kv.second.src == id || kv.second.dst == id; });
    rebuild_indexes();
}

std::optional<Node> KnowledgeGraph::find_node(NodeId id) const {
    std::shared_lock lock(mutex_);
    auto it = data_.nodes.find(id);
    if (it == data_.nodes.end()) return std::nullopt;
    return it->second;
}

Node KnowledgeGraph::node(NodeId id) const {
    std::shared_lock lock(mutex_);
    return node_locked(id);
}

std::optional<Edge> KnowledgeGraph::find_edge(EdgeId id) const {
    std::shared_lock lock(mutex_);
    auto it = data_.edges.find(id);
    if (it == data_.edges.end()) return std::nullopt;
    return it->second;
}

std::vector<Node> KnowledgeGraph::nodes(std::optional<NodeLabel> label) const {
    std::shared_lock lock(mutex_);
    std::vector<Node> out;
    for (const auto& [id, n] : data_.nodes)
        if (!label || n.label == *label) out.push_back(n);
    return out;
}

std::vector<Node> KnowledgeGraph::get_claims(std::optional<Methodology> methodology) const {
    std::shared_lock lock(mutex_);
    std::vector<Node> out;
    for (const auto& [id, n] : data_.nodes) {
        if (n.label != NodeLabel::Claim) continue;
        if (methodology && claim_methodology(n) != *methodology) continue;
        out.push_back(n);
    }
    return out;
}

std::vector<Edge> KnowledgeGraph::edges(std::optional<EdgeType> type) const {
    std::shared_lock lock(mutex_);
    std::vector<Edge> out;
    for (const auto& [id, e] : data_.edges)
        if (!type || e.type == *type) out.push_back(e);
    return out;
}

std::vector<Edge> KnowledgeGraph::collect_locked(const std::vector<EdgeId>& ids,
                                                 std::optional<EdgeType> type) const {
    std::vector<Edge> out;
    for (auto id : ids) {
        const Edge& e = data_.edges.at(id);
        if (!type || e.type == *type) out.push_back(e);
    }
    return out;
}

std::vector<Edge> KnowledgeGraph::in_edges(NodeId id, std::optional<EdgeType> type) const {
    std::shared_lock lock(mutex_);
    node_locked(id);
    auto it = in_.find(id);
    return it == in_.end() ? std::vector<Edge>{} : collect_locked(it->second, type);
}

std::vector<Edge> KnowledgeGraph::out_edges(NodeId id, std::optional<EdgeType> type) const {
    std::shared_lock lock(mutex_);
    node_locked(id);
    auto it = out_.find(id);
    return it == out_.end() ? std::vector<Edge>{} : collect_locked(it->second, type);
}

std::vector<Edge> KnowledgeGraph::incident_edges(NodeId id, std::optional<EdgeType> type) const {
    std::shared_lock lock(mutex_);
    node_locked(id);
    std::vector<EdgeId> ids;
    if (auto it = out_.find(id); it != out_.end()) ids = it->second;
    if (auto it = in_.find(id); it != in_.end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return collect_locked(ids, type);
}

std::optional<Edge> KnowledgeGraph::convergent_edge(NodeId a, NodeId b) const {
    std::shared_lock lock(mutex_);
    auto it = convergent_pairs_.find({std::min(a.value, b.value), std::max(a.value, b.value)});
    if (it == convergent_pairs_.end()) return std::nullopt;
    return data_.edges.at(it->second);
}

Subgraph KnowledgeGraph::get_supporting_subgraph(NodeId claim) const {
    std::shared_lock lock(mutex_);
    const Node& root = node_locked(claim);
    if (root.label != NodeLabel::Claim)
        throw SchemaViolation(fmt::format("node {} is not a Claim", to_string(claim)));

    std::set<NodeId> reached{claim};
    std::set<EdgeId> edges;
    auto walk_in = [&](NodeId at, EdgeType type, std::vector<NodeId>& found) {
        auto it = in_.find(at);
        if (it == in_.end()) return;
        for (auto eid : it->second) {
            const Edge& e = data_.edges.at(eid);
            if (e.type != type) continue;
            edges.insert(eid);
            if (reached.insert(e.src).second) found.push_back(e.src);
        }
    };

    std::vector<NodeId> principles, contradictions, problems, scratch;
    walk_in(claim, EdgeType::Supports, principles);
    walk_in(claim, EdgeType::Generates, scratch);
    for (auto p : principles) walk_in(p, EdgeType::ResolvedBy, contradictions);
    for (auto c : contradictions) walk_in(c, EdgeType::HasContradiction, problems);
    if (auto origin = origin_problem(root); origin && data_.nodes.contains(*origin) &&
                                            data_.nodes.at(*origin).label == NodeLabel::Problem) {
        if (reached.insert(*origin).second) problems.push_back(*origin);
    }
    for (auto p : problems) walk_in(p, EdgeType::Motivates, scratch);

    Subgraph sub;
    for (auto id : reached) sub.nodes.push_back(data_.nodes.at(id));
    for (auto id : edges) sub.edges.push_back(data_.edges.at(id));
    return sub;
}

GraphSummary KnowledgeGraph::summary() const {
    std::shared_lock lock(mutex_);
    GraphSummary s;
    for (auto label : kAllNodeLabels) s.node_counts[label] = 0;
    for (auto type : kAllEdgeTypes) s.edge_counts[type] = 0;
    for (const auto& [id, n] : data_.nodes) ++s.node_counts[n.label];
    for (const auto& [id, e] : data_.edges) ++s.edge_counts[e.type];
    s.total_nodes = data_.nodes.size();
    s.total_edges = data_.edges.size();
    return s;
}

GraphData KnowledgeGraph::data() const {
    std::shared_lock lock(mutex_);
    return data_;
}

void KnowledgeGraph::replace(GraphData data) {
    for (const auto& [id, n] : data.nodes) {
        if (id != n.id || id.value == 0) throw SchemaViolation("node key does not match node id");
        validate_node_properties(n.label, n.properties);
    }
    std::set<PairKey> pairs;
    for (const auto& [id, e] : data.edges) {
        if (id != e.id || id.value == 0) throw SchemaViolation("edge key does not match edge id");
        auto s = data.nodes.find(e.src);
        auto d = data.nodes.find(e.dst);
        if (s == data.nodes.end() || d == data.nodes.end())
            throw UnknownNode(fmt::format("edge {} references a missing node", to_string(id)));
        validate_edge_locked(s->second, d->second, e.type, e.properties);
        if (e.type == EdgeType::Convergent &&
            !pairs.insert({std::min(e.src.value, e.dst.value), std::max(e.src.value, e.dst.value)}).second)
            throw SchemaViolation("duplicate CONVERGENT edge on one claim pair");
    }
    std::unique_lock lock(mutex_);
    data_ = std::move(data);
    next_node_ = data_.nodes.empty() ? 1 : data_.nodes.rbegin()->first.value + 1;
    next_edge_ = data_.edges.empty() ? 1 : data_.edges.rbegin()->first.value + 1;
    rebuild_indexes();
}

void KnowledgeGraph::rebuild_indexes() {
    out_.clear();
    in_.clear();
    convergent_pairs_.clear();
    for (const auto& [id, e] : data_.edges) {
        out_[e.src].push_back(id);
        in_[e.dst].push_back(id);
        if (e.type == EdgeType::Convergent)
            convergent_pairs_.emplace(PairKey{std::min(e.src.value, e.dst.value), std::max(e.src.value, e.dst.value)},
                                      id);
    }
}

}  // namespace ideaforge
