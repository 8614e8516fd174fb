#include "ideaforge/schema.hpp"

#include <cmath>
#include <vector>
#include <fmt/format.h>

#include "ideaforge/error.hpp"

namespace ideaforge {

namespace {

struct RequiredKey {
    std::string_view key;
    enum Kind { Text, NonEmptyText, UnitInterval, TrizNumber, Methodology } kind;
};

std::vector<RequiredKey> required_keys(NodeLabel label) {
    using K = RequiredKey;
    switch (label) {
        case NodeLabel::Problem: return {{"statement", K::Text}, {"domain", K::Text}};
        case NodeLabel::Contradiction: return {{"improving", K::Text}, {"worsening", K::Text}};
        case NodeLabel::Principle:
            return {{"name", K::NonEmptyText}, {"triz_number", K::TrizNumber}, {"description", K::Text}};
        case NodeLabel::UserNeed:
            return {{"persona", K::Text}, {"job_to_be_done", K::Text}, {"pain_level", K::UnitInterval}};
        case NodeLabel::Transformation: return {{"scamper_type", K::NonEmptyText}, {"description", K::Text}};
        case NodeLabel::Analogy: return {{"source_domain", K::Text}, {"mechanism", K::Text}};
        case NodeLabel::PriorArt:
            return {{"title", K::NonEmptyText}, {"source", K::Text}, {"similarity", K::UnitInterval}};
        case NodeLabel::Claim:
            return {{"text", K::NonEmptyText}, {"methodology", K::Methodology}, {"strength", K::UnitInterval}};
    }
    return {};
}

}  // namespace

std::string_view to_string(NodeLabel label) {
    switch (label) {
        case NodeLabel::Problem: return "Problem";
        case NodeLabel::Contradiction: return "Contradiction";
        case NodeLabel::Principle: return "Principle";
        case NodeLabel::UserNeed: return "UserNeed";
        case NodeLabel::Transformation: return "Transformation";
        case NodeLabel::Analogy: return "Analogy";
        case NodeLabel::PriorArt: return "PriorArt";
        case NodeLabel::Claim: return "Claim";
    }
    return "?";
}

std::string_view to_string(EdgeType type) {
    switch (type) {
        case EdgeType::HasContradiction: return "HAS_CONTRADICTION";
        case EdgeType::ResolvedBy: return "RESOLVED_BY";
        case EdgeType::Supports: return "SUPPORTS";
        case EdgeType::Motivates: return "MOTIVATES";
        case EdgeType::Generates: return "GENERATES";
        case EdgeType::Inspires: return "INSPIRES";
        case EdgeType::Challenges: return "CHALLENGES";
        case EdgeType::Convergent: return "CONVERGENT";
    }
    return "?";
}

std::optional<NodeLabel> parse_node_label(std::string_view name) {
    for (auto label : kAllNodeLabels)
        if (to_string(label) == name) return label;
    return std::nullopt;
}

std::optional<EdgeType> parse_edge_type(std::string_view name) {
    for (auto type : kAllEdgeTypes)
        if (to_string(type) == name) return type;
    return std::nullopt;
}

EdgeEndpoints endpoints_of(EdgeType type) {
    switch (type) {
        case EdgeType::HasContradiction: return {NodeLabel::Problem, NodeLabel::Contradiction};
        case EdgeType::ResolvedBy: return {NodeLabel::Contradiction, NodeLabel::Principle};
        case EdgeType::Supports: return {NodeLabel::Principle, NodeLabel::Claim};
        case EdgeType::Motivates: return {NodeLabel::UserNeed, NodeLabel::Problem};
        case EdgeType::Generates: return {NodeLabel::Transformation, NodeLabel::Claim};
        case EdgeType::Inspires: return {NodeLabel::Analogy, NodeLabel::Claim};
        case EdgeType::Challenges: return {NodeLabel::PriorArt, NodeLabel::Claim};
        case EdgeType::Convergent: return {NodeLabel::Claim, NodeLabel::Claim};
    }
    return {NodeLabel::Problem, NodeLabel::Problem};
}

bool edge_allowed(NodeLabel src, NodeLabel dst, EdgeType type) {
    auto ends = endpoints_of(type);
    return ends.src == src && ends.dst == dst;
}

std::string_view to_string(Methodology m) {
    switch (m) {
        case Methodology::Triz: return "TRIZ";
        case Methodology::DesignThinking: return "DT";
        case Methodology::Scamper: return "SCAMPER";
    }
    return "?";
}

std::optional<Methodology> parse_methodology(std::string_view name) {
    for (auto m : kAllMethodologies)
        if (to_string(m) == name) return m;
    return std::nullopt;
}

std::optional<double> as_number(const PropertyValue& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    if (auto* d = std::get_if<double>(&v)) return *d;
    return std::nullopt;
}

std::string display(const PropertyValue& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::string>)
                return x;
            else if constexpr (std::is_same_v<T, bool>)
                return x ? "true" : "false";
            else
                return fmt::format("{}", x);
        },
        v);
}

void validate_node_properties(NodeLabel label, const Properties& props) {
    for (const auto& req : required_keys(label)) {
        auto it = props.find(req.key);
        if (it == props.end())
            throw SchemaViolation(fmt::format("{} node requires property '{}'", to_string(label), req.key));
        const auto& value = it->second;
        auto fail = [&](std::string_view why) {
            throw SchemaViolation(
                fmt::format("{}.{}: {} (got '{}')", to_string(label), req.key, why, display(value)));
        };
        switch (req.kind) {
            case RequiredKey::Text:
                if (!std::holds_alternative<std::string>(value)) fail("must be a string");
                break;
            case RequiredKey::NonEmptyText:
                if (!std::holds_alternative<std::string>(value) || std::get<std::string>(value).empty())
                    fail("must be a non-empty string");
                break;
            case RequiredKey::Methodology:
                if (!std::holds_alternative<std::string>(value) ||
                    !parse_methodology(std::get<std::string>(value)))
                    fail("must be one of TRIZ, DT, SCAMPER");
                break;
            case RequiredKey::UnitInterval: {
                auto n = as_number(value);
                if (!n || std::isnan(*n) || *n < 0.0 || *n > 1.0) fail("must be a number in [0,1]");
                break;
            }
            case RequiredKey::TrizNumber: {
                auto n = as_number(value);
                if (!n || std::floor(*n) != *n || *n < 1.0 || *n > 40.0) fail("must be an integer in 1..40");
                break;
            }
        }
    }
}

}  // namespace ideaforge
