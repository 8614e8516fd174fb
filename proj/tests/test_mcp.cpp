#include <set>
#include <sstream>

#include "doctest.h"
#include "ideaforge/mcp_server.hpp"
#include "support.hpp"

using namespace testing;
using namespace ideaforge::mcp;
using nlohmann::json;

namespace {

json call(Server& s, const json& request) {
    auto reply = s.handle_line(request.dump());
    REQUIRE(reply.has_value());
    return json::parse(*reply);
}

json tool(Server& s, const std::string& name, json args = json::object(), int id = 1) {
    return call(s, {{"jsonrpc", "2.0"}, {"id", id}, {"method", "tools/call"},
                    {"params", {{"name", name}, {"arguments", args}}}});
}

json payload(const json& response) { return response["result"]["structuredContent"]["result"]; }

}  // namespace

TEST_CASE("initialize and tools/list") {
    KnowledgeGraph g;
    Server s(g);
    auto init = call(s, {{"jsonrpc", "2.0"}, {"id", 0}, {"method", "initialize"}, {"params", json::object()}});
    CHECK(init["result"]["protocolVersion"] == kProtocolVersion);
    auto list = call(s, {{"jsonrpc", "2.0"}, {"id", "abc"}, {"method", "tools/list"}});
    CHECK(list["id"] == "abc");
    std::set<std::string> names;
    for (const auto& t : list["result"]["tools"]) {
        names.insert(t["name"]);
        CHECK(t["inputSchema"]["type"] == "object");
    }
    CHECK(names == std::set<std::string>{"get_all_claims", "get_convergent_claims", "get_strongest_claims",
                                         "get_kg_summary", "add_claim"});
}

TEST_CASE("protocol errors") {
    KnowledgeGraph g;
    Server s(g);
    auto parse = json::parse(*s.handle_line("{not json"));
    CHECK(parse["error"]["code"] == kParseError);
    CHECK(parse["id"].is_null());
    auto unknown = call(s, {{"jsonrpc", "2.0"}, {"id", 7}, {"method", "resources/list"}});
    CHECK(unknown["error"]["code"] == kMethodNotFound);
    CHECK(unknown["id"] == 7);
    auto bad_tool = tool(s, "summon_dragon");
    CHECK(bad_tool["error"]["code"] == kMethodNotFound);
    auto invalid = call(s, {{"id", 3}, {"method", "ping"}});
    CHECK(invalid["error"]["code"] == kInvalidRequest);
    CHECK_FALSE(s.handle_line(json{{"jsonrpc", "2.0"}, {"method", "notifications/initialized"}}.dump()).has_value());
}

TEST_CASE("strongest claims on the legal graph") {
    auto g = legal_graph();
    Server s(g);
    auto top = payload(tool(s, "get_strongest_claims", {{"limit", 1}}));
    REQUIRE(top.size() == 1);
    CHECK(top[0]["claim_node"]["methodology"] == "TRIZ");
    CHECK(payload(tool(s, "get_strongest_claims")).size() == 3);

    auto zero = tool(s, "get_strongest_claims", {{"limit", 0}});
    CHECK(zero["result"]["isError"] == true);

    KnowledgeGraph empty;
    Server e(empty);
    CHECK(payload(tool(e, "get_strongest_claims", {{"limit", 3}})).empty());
}

TEST_CASE("read tools never mutate") {
    auto g = legal_graph();
    Server s(g);
    auto before = g.data();
    int id = 1;
    for (int round = 0; round < 3; ++round)
        for (auto name : {"get_all_claims", "get_convergent_claims", "get_strongest_claims", "get_kg_summary"})
            CHECK(tool(s, name, json::object(), id++)["result"]["isError"] == false);
    CHECK(g.data() == before);
    auto pairs = payload(tool(s, "get_convergent_claims"));
    CHECK(pairs.size() == 3);
    CHECK(pairs[0].contains("similarity"));
    CHECK(payload(tool(s, "get_kg_summary"))["total_nodes"] == 11);
}

TEST_CASE("add_claim") {
    auto g = legal_graph();
    Server s(g);
    int mutations = 0;
    s.on_mutation([&] { ++mutations; });
    auto added = payload(tool(s, "add_claim", {{"text", "new claim"}, {"methodology", "DT"}}));
    CHECK(added["strength"] == 0.65);
    CHECK(mutations == 1);
    CHECK(payload(tool(s, "get_kg_summary"))["total_nodes"] == 12);
    auto all = payload(tool(s, "get_all_claims"));
    CHECK(std::count_if(all.begin(), all.end(), [](const json& c) { return c["text"] == "new claim"; }) == 1);
    auto dt = payload(tool(s, "get_all_claims", {{"methodology", "DT"}}));
    CHECK(dt.size() == 2);

    CHECK(tool(s, "add_claim", {{"text", ""}, {"methodology", "TRIZ"}})["result"]["isError"] == true);
    CHECK(tool(s, "add_claim", {{"text", "x"}, {"methodology", "BIOMIMICRY"}})["result"]["isError"] == true);
    CHECK(tool(s, "add_claim", {{"text", "x"}, {"methodology", "TRIZ"}, {"strength", 2}})["result"]["isError"] == true);
    CHECK(mutations == 1);
}

TEST_CASE("serve handles a newline-delimited session") {
    KnowledgeGraph g;
    Server s(g);
    std::istringstream in(
        "{\"jsonrpc\":\"2.0\",\"id\":1,\"method\":\"initialize\",\"params\":{}}\n"
        "{\"jsonrpc\":\"2.0\",\"method\":\"notifications/initialized\"}\n"
        "\n"
        "{\"jsonrpc\":\"2.0\",\"id\":2,\"method\":\"tools/call\",\"params\":{\"name\":\"add_claim\","
        "\"arguments\":{\"text\":\"x\",\"methodology\":\"SCAMPER\"}}}\n");
    std::ostringstream out;
    s.serve(in, out);
    std::istringstream lines(out.str());
    std::vector<json> replies;
    for (std::string line; std::getline(lines, line);) replies.push_back(json::parse(line));
    REQUIRE(replies.size() == 2);
    CHECK(replies[0]["id"] == 1);
    CHECK(replies[1]["id"] == 2);
    CHECK(g.get_claims().size() == 1);
}
