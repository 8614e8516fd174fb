#include "ideaforge/mcp_server.hpp"

#include <fmt/format.h>
#include <istream>
#include <ostream>

#include "ideaforge/convergence.hpp"
#include "ideaforge/error.hpp"

namespace ideaforge::mcp {

using nlohmann::json;

namespace {

struct RpcError {
    int code;
    std::string message;
};

json error_response(const json& id, int code, const std::string& message) {
    return {{"jsonrpc", "2.0"}, {"id", id}, {"error", {{"code", code}, {"message", message}}}};
}

json tool_result(const json& payload, bool is_error) {
    return {{"content", json::array({{{"type", "text"}, {"text", is_error ? payload.get<std::string>() : payload.dump()}}})},
            {"structuredContent", is_error ? json{{"error", payload}} : json{{"result", payload}}},
            {"isError", is_error}};
}

std::optional<Methodology> methodology_arg(const json& args) {
    if (!args.contains("methodology") || args["methodology"].is_null()) return std::nullopt;
    if (!args["methodology"].is_string()) throw ToolError("methodology must be a string");
    auto m = parse_methodology(args["methodology"].get<std::string>());
    if (!m) throw ToolError(fmt::format("unknown methodology '{}'", args["methodology"].get<std::string>()));
    return m;
}

}  // namespace

json claim_to_json(const Node& claim) {
    json props = json::object();
    for (const auto& [k, v] : claim.properties) std::visit([&](const auto& x) { props[k] = x; }, v);
    return {{"id", to_string(claim.id)},
            {"text", claim_text(claim)},
            {"methodology", to_string(claim_methodology(claim))},
            {"strength", claim_strength(claim)},
            {"properties", props}};
}

json summary_to_json(const GraphSummary& s) {
    json nodes = json::object(), edges = json::object();
    for (const auto& [label, n] : s.node_counts) nodes[std::string(to_string(label))] = n;
    for (const auto& [type, n] : s.edge_counts) edges[std::string(to_string(type))] = n;
    return {{"node_counts", nodes}, {"edge_counts", edges}, {"total_nodes", s.total_nodes},
            {"total_edges", s.total_edges}};
}

json breakdown_to_json(const ScoreBreakdown& b) {
    return {{"claim", to_string(b.claim)},
            {"convergent_count", b.convergent_count},
            {"methodology_diversity", b.methodology_diversity},
            {"claim_strength", b.claim_strength},
            {"prior_art_challenges", b.prior_art_challenges},
            {"normalized",
             {{"convergent_count", b.norm_convergent},
              {"methodology_diversity", b.norm_diversity},
              {"claim_strength", b.norm_strength},
              {"prior_art_challenges", b.norm_challenges}}},
            {"total", b.total}};
}

std::vector<ToolDescriptor> tool_descriptors() {
    const json methodology = {{"type", "string"}, {"enum", {"TRIZ", "DT", "SCAMPER"}}};
    return {
        {"get_all_claims", "List every Claim node in insertion order, optionally filtered by methodology.",
         {{"type", "object"}, {"properties", {{"methodology", methodology}}}}},
        {"get_convergent_claims",
         "List CONVERGENT claim pairs as {claim_a, claim_b, similarity, count} records.",
         {{"type", "object"}, {"properties", json::object()}}},
        {"get_strongest_claims", "Claims ranked by InnovationScore with their score breakdown, best first.",
         {{"type", "object"},
          {"properties", {{"limit", {{"type", "integer"}, {"minimum", 1}, {"default", 3}}}}}}},
        {"get_kg_summary", "Node and edge counts per label and type.",
         {{"type", "object"}, {"properties", json::object()}}},
        {"add_claim",
         "Add a Claim node. Strength defaults to the methodology's fixed value. Does not run convergence detection.",
         {{"type", "object"},
          {"properties",
           {{"text", {{"type", "string"}, {"minLength", 1}}},
            {"methodology", methodology},
            {"strength", {{"type", "number"}, {"minimum", 0}, {"maximum", 1}}}}},
          {"required", {"text", "methodology"}}}},
    };
}

Server::Server(KnowledgeGraph& graph, ScoreWeights weights) : graph_(graph), weights_(weights) {}

json Server::tool_get_all_claims(const json& args) const {
    json out = json::array();
    for (const auto& c : graph_.get_claims(methodology_arg(args))) out.push_back(claim_to_json(c));
    return out;
}

json Server::tool_get_convergent_claims(const json&) const {
    json out = json::array();
    for (const auto& p : convergent_pairs(graph_))
        out.push_back({{"claim_a", to_string(p.claim_a)},
                       {"claim_b", to_string(p.claim_b)},
                       {"similarity", p.similarity},
                       {"count", p.count}});
    return out;
}

json Server::tool_get_strongest_claims(const json& args) const {
    std::int64_t limit = 3;
    if (args.contains("limit")) {
        if (!args["limit"].is_number_integer()) throw ToolError("limit must be an integer");
        limit = args["limit"].get<std::int64_t>();
    }
    if (limit < 1) throw ToolError("limit must be at least 1");
    json out = json::array();
    if (graph_.get_claims().empty()) return out;
    auto ranked = rank_claims(graph_, weights_);
    for (std::size_t i = 0; i < ranked.size() && static_cast<std::int64_t>(i) < limit; ++i) {
        auto entry = breakdown_to_json(ranked[i]);
        entry["rank"] = i + 1;
        entry["claim_node"] = claim_to_json(graph_.node(ranked[i].claim));
        out.push_back(std::move(entry));
    }
    return out;
}

json Server::tool_get_kg_summary(const json&) const { return summary_to_json(graph_.summary()); }

json Server::tool_add_claim(const json& args) {
    if (!args.contains("text") || !args["text"].is_string() || args["text"].get<std::string>().empty())
        throw ToolError("text must be a non-empty string");
    if (!args.contains("methodology")) throw ToolError("methodology is required");
    auto m = *methodology_arg(args);
    double strength = fixed_strength(m);
    if (args.contains("strength") && !args["strength"].is_null()) {
        if (!args["strength"].is_number()) throw ToolError("strength must be a number");
        strength = args["strength"].get<double>();
        if (!(strength >= 0.0 && strength <= 1.0)) throw ToolError("strength must lie in [0,1]");
    }
    auto id = graph_.create_node(NodeLabel::Claim, {{"text", args["text"].get<std::string>()},
                                                    {"methodology", std::string(to_string(m))},
                                                    {"strength", strength}});
    if (on_mutation_) on_mutation_();
    return claim_to_json(graph_.node(id));
}

json Server::call_tool(const json& params) {
    if (!params.is_object() || !params.contains("name") || !params["name"].is_string())
        throw RpcError{kInvalidParams, "tools/call needs a string 'name'"};
    const auto name = params["name"].get<std::string>();
    json args = params.contains("arguments") && !params["arguments"].is_null() ? params["arguments"] : json::object();
    if (!args.is_object()) throw RpcError{kInvalidParams, "arguments must be an object"};

    try {
        json payload;
        if (name == "get_all_claims")
            payload = tool_get_all_claims(args);
        else if (name == "get_convergent_claims")
            payload = tool_get_convergent_claims(args);
        else if (name == "get_strongest_claims")
            payload = tool_get_strongest_claims(args);
        else if (name == "get_kg_summary")
            payload = tool_get_kg_summary(args);
        else if (name == "add_claim")
            payload = tool_add_claim(args);
        else
            throw RpcError{kMethodNotFound, fmt::format("unknown tool '{}'", name)};
        return tool_result(payload, false);
    } catch (const ToolError& e) {
        return tool_result(e.what(), true);
    } catch (const Error& e) {
        return tool_result(e.what(), true);
    }
}

json Server::dispatch(const std::string& method, const json& params) {
    if (method == "initialize")
        return {{"protocolVersion", kProtocolVersion},
                {"capabilities", {{"tools", {{"listChanged", false}}}}},
                {"serverInfo", {{"name", "ideaforge"}, {"version", "1.0.0"}}}};
    if (method == "ping") return json::object();
    if (method == "tools/list") {
        json tools = json::array();
        for (const auto& t : tool_descriptors())
            tools.push_back({{"name", t.name}, {"description", t.description}, {"inputSchema", t.input_schema}});
        return {{"tools", tools}};
    }
    if (method == "tools/call") return call_tool(params);
    throw RpcError{kMethodNotFound, fmt::format("method '{}' not found", method)};
}

std::optional<std::string> Server::handle_line(const std::string& line) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) return std::nullopt;
    auto request = json::parse(line, nullptr, false);
    if (request.is_discarded()) return error_response(nullptr, kParseError, "parse error").dump();
    if (!request.is_object() || request.value("jsonrpc", "") != "2.0" || !request.contains("method") ||
        !request["method"].is_string())
        return error_response(request.is_object() && request.contains("id") ? request["id"] : json(nullptr),
                              kInvalidRequest, "invalid request")
            .dump();

    const bool notification = !request.contains("id");
    const json id = notification ? json(nullptr) : request["id"];
    const json params = request.contains("params") ? request["params"] : json::object();
    const auto method = request["method"].get<std::string>();

    json response;
    try {
        auto result = dispatch(method, params);
        response = {{"jsonrpc", "2.0"}, {"id", id}, {"result", std::move(result)}};
    } catch (const RpcError& e) {
        response = error_response(id, e.code, e.message);
    } catch (const std::exception& e) {
        response = error_response(id, kInternalError, e.what());
    }
    if (notification) return std::nullopt;
    return response.dump();
}

void Server::serve(std::istream& in, std::ostream& out) {
    std::string line;
    while (std::getline(in, line)) {
        if (auto reply = handle_line(line)) out << *reply << '\n' << std::flush;
    }
}

}  // namespace ideaforge::mcp
