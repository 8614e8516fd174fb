#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace ideaforge {

enum class NodeLabel {
    Problem,
    Contradiction,
    Principle,
    UserNeed,
    Transformation,
    Analogy,
    PriorArt,
    Claim,
};

enum class EdgeType {
    HasContradiction,
    ResolvedBy,
    Supports,
    Motivates,
    Generates,
    Inspires,
    Challenges,
    Convergent,
};

inline constexpr std::array<NodeLabel, 8> kAllNodeLabels = {
    NodeLabel::Problem,        NodeLabel::Contradiction, NodeLabel::Principle, NodeLabel::UserNeed,
    NodeLabel::Transformation, NodeLabel::Analogy,       NodeLabel::PriorArt,  NodeLabel::Claim,
};

inline constexpr std::array<EdgeType, 8> kAllEdgeTypes = {
    EdgeType::HasContradiction, EdgeType::ResolvedBy, EdgeType::Supports,   EdgeType::Motivates,
    EdgeType::Generates,        EdgeType::Inspires,   EdgeType::Challenges, EdgeType::Convergent,
};

std::string_view to_string(NodeLabel label);
std::string_view to_string(EdgeType type);
std::optional<NodeLabel> parse_node_label(std::string_view name);
std::optional<EdgeType> parse_edge_type(std::string_view name);

/// Endpoint labels every edge of `type` must connect.
struct EdgeEndpoints {
    NodeLabel src;
    NodeLabel dst;
};
EdgeEndpoints endpoints_of(EdgeType type);
bool edge_allowed(NodeLabel src, NodeLabel dst, EdgeType type);

enum class Methodology { Triz, DesignThinking, Scamper };

inline constexpr std::array<Methodology, 3> kAllMethodologies = {
    Methodology::Triz, Methodology::DesignThinking, Methodology::Scamper};

/// Wire names: "TRIZ", "DT", "SCAMPER".
std::string_view to_string(Methodology m);
std::optional<Methodology> parse_methodology(std::string_view name);

/// Agent-assigned claim strength; constant per methodology.
constexpr double fixed_strength(Methodology m) {
    switch (m) {
        case Methodology::Triz: return 0.7;
        case Methodology::DesignThinking: return 0.65;
        case Methodology::Scamper: return 0.6;
    }
    return 0.0;
}

using PropertyValue = std::variant<std::string, std::int64_t, double, bool>;
using Properties = std::map<std::string, PropertyValue, std::less<>>;

/// Numeric view of a property value; strings and booleans yield nullopt.
std::optional<double> as_number(const PropertyValue& v);
std::string display(const PropertyValue& v);

/// Throws SchemaViolation when `props` lacks a required key for `label`
/// or a constrained value is out of range.
void validate_node_properties(NodeLabel label, const Properties& props);

template <typename Tag>
struct Id {
    std::uint64_t value = 0;
    friend auto operator<=>(const Id&, const Id&) = default;
};

struct NodeTag {};
struct EdgeTag {};
using NodeId = Id<NodeTag>;
using EdgeId = Id<EdgeTag>;

template <typename Tag>
std::string to_string(Id<Tag> id) {
    return std::to_string(id.value);
}

}  // namespace ideaforge
