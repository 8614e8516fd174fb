#include <set>

#include "doctest.h"
#include "ideaforge/agents.hpp"
#include "ideaforge/error.hpp"
#include "support.hpp"

using namespace testing;
using namespace ideaforge::agents;

namespace {

struct Fixture {
    KnowledgeGraph graph;
    NodeId problem = create_problem(graph, kLegalIdea, "legal tech");
};

llm::OfflineGenerator offline;

std::multiset<std::string> labels_of(const KnowledgeGraph& g, const AgentReport& r) {
    std::multiset<std::string> out;
    for (auto id : r.created_node_ids) out.insert(std::string(to_string(g.node(id).label)));
    for (auto id : r.created_edge_ids) out.insert(std::string(to_string(g.find_edge(id)->type)));
    return out;
}

}  // namespace

TEST_CASE("TRIZ fallback builds the contradiction chain") {
    Fixture f;
    auto before = f.graph.summary();
    auto r = run_triz(kLegalIdea, f.problem, f.graph, offline);
    auto after = f.graph.summary();
    CHECK(r.used_fallback);
    CHECK(after.total_nodes - before.total_nodes == 4);
    CHECK(after.total_edges - before.total_edges == 5);
    auto claim = f.graph.node(r.claim_id);
    CHECK(claim_text(claim).rfind("A method for resolving technical contradictions in voice first legal assistant", 0) == 0);
    CHECK(claim_strength(claim) == 0.7);
    auto principles = f.graph.nodes(NodeLabel::Principle);
    REQUIRE(principles.size() == 2);
    CHECK(principles[0].text("name") == "Segmentation");
    CHECK(principles[1].text("name") == "Preliminary Action");
}

TEST_CASE("TRIZ replaces out-of-range and duplicate principle numbers") {
    Fixture f;
    ScriptedGenerator gen({text(R"({"improving":"accuracy","worsening":"latency",
        "principles":[{"number":57,"name":"Bogus"},{"number":35,"name":"Parameter Changes"},{"number":35}],
        "claim":"A voice interface that adapts parameters"})")});
    auto r = run_triz(kLegalIdea, f.problem, f.graph, gen);
    CHECK(r.used_fallback);
    std::set<std::int64_t> numbers;
    for (const auto& p : f.graph.nodes(NodeLabel::Principle)) {
        auto n = std::get<std::int64_t>(p.properties.at("triz_number"));
        CHECK(n >= 1);
        CHECK(n <= 40);
        numbers.insert(n);
    }
    CHECK(numbers == std::set<std::int64_t>{35, 1});
    CHECK(claim_text(f.graph.node(r.claim_id)) == "A voice interface that adapts parameters");
    auto c = f.graph.nodes(NodeLabel::Contradiction).at(0);
    CHECK(c.text("improving") == "accuracy");
}

TEST_CASE("Design Thinking fallback and LLM paths") {
    Fixture f;
    auto r = run_design_thinking(kLegalIdea, f.problem, f.graph, offline);
    CHECK(r.used_fallback);
    CHECK(f.graph.summary().count(NodeLabel::UserNeed) == 1);
    CHECK(f.graph.summary().count(EdgeType::Motivates) == 1);
    CHECK(claim_strength(f.graph.node(r.claim_id)) == 0.65);

    Fixture g;
    ScriptedGenerator gen({text(R"({"personas":[
        {"persona":"Tenant farmer","job_to_be_done":"understand a court notice","pain_level":5},
        {"persona":"Paralegal volunteer","job_to_be_done":"triage many cases","pain_level":0.4}],
        "hmw":["How might we read notices aloud?","How might we cut waiting time?"],
        "claim":"A voice system that explains court notices"})")});
    auto r2 = run_design_thinking(kLegalIdea, g.problem, g.graph, gen);
    CHECK_FALSE(r2.used_fallback);
    auto needs = g.graph.nodes(NodeLabel::UserNeed);
    REQUIRE(needs.size() == 2);
    CHECK(*needs[0].number("pain_level") == 1.0);
    CHECK(*needs[1].number("pain_level") == 0.4);
    CHECK(g.graph.summary().count(EdgeType::Motivates) == 2);
    auto claim = g.graph.node(r2.claim_id);
    CHECK(claim_strength(claim) == 0.65);
    CHECK(claim.text("hmw") == "How might we read notices aloud? | How might we cut waiting time?");
}

TEST_CASE("SCAMPER fallback and deduplication") {
    Fixture f;
    auto r = run_scamper(kLegalIdea, f.problem, f.graph, offline);
    auto types = f.graph.nodes(NodeLabel::Transformation);
    REQUIRE(types.size() == 3);
    CHECK(types[0].text("scamper_type") == "Substitute");
    CHECK(types[1].text("scamper_type") == "Combine");
    CHECK(types[2].text("scamper_type") == "Adapt");
    auto gen_edges = f.graph.edges(EdgeType::Generates);
    REQUIRE(gen_edges.size() == 1);
    CHECK(gen_edges[0].src == types[0].id);
    CHECK(claim_strength(f.graph.node(r.claim_id)) == 0.6);

    Fixture g;
    ScriptedGenerator gen({text(R"({"transformations":[
        {"type":"Adapt","description":"borrow triage dialogue from medicine"},
        {"type":"adapt","description":"duplicate"},
        {"type":"Put to other uses","description":"reuse for tax notices"}],
        "most_promising":2,"claim":"A triage-style legal dialogue"})")});
    auto r2 = run_scamper(kLegalIdea, g.problem, g.graph, gen);
    CHECK(r2.used_fallback);
    std::vector<std::string> got;
    for (const auto& t : g.graph.nodes(NodeLabel::Transformation)) got.push_back(t.text("scamper_type"));
    CHECK(got == std::vector<std::string>{"Adapt", "PutToOtherUses", "Substitute"});
    auto edge = g.graph.edges(EdgeType::Generates).at(0);
    CHECK(g.graph.node(edge.src).text("scamper_type") == "PutToOtherUses");
}

TEST_CASE("agents reject a missing problem") {
    KnowledgeGraph g;
    auto claim = add_claim(g, "x", Methodology::Triz);
    CHECK_THROWS_AS(run_triz("idea", NodeId{42}, g, offline), UnknownNode);
    CHECK_THROWS_AS(run_design_thinking("idea", claim, g, offline), UnknownNode);
    CHECK_THROWS_AS(run_scamper("idea", NodeId{42}, g, offline), UnknownNode);
}

TEST_CASE("structure is fixed for every outcome variant") {
    const std::vector<llm::GenerationOutcome> outcomes = {
        llm::Unavailable{"down"},
        llm::Malformed{"x", "bad"},
        text("no json here"),
        text("{\"claim\": 3}"),
        text(R"({"improving":"a","worsening":"b","principles":[],"claim":"c",
                 "personas":[],"transformations":[{"type":"Reverse"}]})"),
    };
    const std::multiset<std::string> triz = {"Contradiction", "Principle", "Principle", "Claim",
                                             "HAS_CONTRADICTION", "RESOLVED_BY", "RESOLVED_BY", "SUPPORTS", "SUPPORTS"};
    const std::multiset<std::string> scamper = {"Transformation", "Transformation", "Transformation", "Claim",
                                                "GENERATES"};
    for (const auto& outcome : outcomes) {
        Fixture f;
        ScriptedGenerator gen({outcome});
        auto t = run_triz(kLegalIdea, f.problem, f.graph, gen);
        auto d = run_design_thinking(kLegalIdea, f.problem, f.graph, gen);
        auto s = run_scamper(kLegalIdea, f.problem, f.graph, gen);
        CHECK(labels_of(f.graph, t) == triz);
        CHECK(labels_of(f.graph, s) == scamper);
        CHECK(labels_of(f.graph, d) == std::multiset<std::string>{"UserNeed", "Claim", "MOTIVATES"});
        CHECK(claim_strength(f.graph.node(t.claim_id)) == 0.7);
        CHECK(claim_strength(f.graph.node(d.claim_id)) == 0.65);
        CHECK(claim_strength(f.graph.node(s.claim_id)) == 0.6);
    }
}

TEST_CASE("principle and SCAMPER tables") {
    CHECK(triz_principle_name(1) == "Segmentation");
    CHECK(triz_principle_name(40) == "Composite Materials");
    CHECK(triz_principle_name(41).empty());
    CHECK(normalise_scamper_type("put to other uses") == "PutToOtherUses");
    CHECK(normalise_scamper_type("nonsense").empty());
}
