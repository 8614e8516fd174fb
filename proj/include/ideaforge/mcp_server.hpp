#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ideaforge/graph.hpp"
#include "ideaforge/scoring.hpp"
#include "json.hpp"

namespace ideaforge::mcp {

// JSON-RPC 2.0 error codes.
inline constexpr int kParseError = -32700;
inline constexpr int kInvalidRequest = -32600;
inline constexpr int kMethodNotFound = -32601;
inline constexpr int kInvalidParams = -32602;
inline constexpr int kInternalError = -32603;

inline constexpr const char* kProtocolVersion = "2024-11-05";

struct ToolDescriptor {
    std::string name;
    std::string description;
    nlohmann::json input_schema;
};

/// The five graph tools, in a fixed order.
std::vector<ToolDescriptor> tool_descriptors();

/// Tool-level failure reported as an MCP result with isError set.
class ToolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Newline-delimited JSON-RPC over a pair of streams. Requests are handled
/// one at a time; read tools only take the graph's shared lock.
class Server {
public:
    explicit Server(KnowledgeGraph& graph, ScoreWeights weights = {});

    /// Called after every successful add_claim, e.g. to persist a snapshot.
    void on_mutation(std::function<void()> callback) { on_mutation_ = std::move(callback); }

    /// One request line in, at most one response line out (notifications
    /// get none).
    std::optional<std::string> handle_line(const std::string& line);

    /// Reads until EOF.
    void serve(std::istream& in, std::ostream& out);

    // Tool bodies, exposed for direct use and tests. Throw ToolError.
    nlohmann::json tool_get_all_claims(const nlohmann::json& args) const;
    nlohmann::json tool_get_convergent_claims(const nlohmann::json& args) const;
    nlohmann::json tool_get_strongest_claims(const nlohmann::json& args) const;
    nlohmann::json tool_get_kg_summary(const nlohmann::json& args) const;
    nlohmann::json tool_add_claim(const nlohmann::json& args);

private:
    nlohmann::json dispatch(const std::string& method, const nlohmann::json& params);
    nlohmann::json call_tool(const nlohmann::json& params);

    KnowledgeGraph& graph_;
    ScoreWeights weights_;
    std::function<void()> on_mutation_;
};

nlohmann::json claim_to_json(const Node& claim);
nlohmann::json summary_to_json(const GraphSummary& summary);
nlohmann::json breakdown_to_json(const ScoreBreakdown& score);

}  // namespace ideaforge::mcp
