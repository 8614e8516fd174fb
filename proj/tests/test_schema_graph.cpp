#include "doctest.h"
#include "ideaforge/error.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Properties minimal_properties(NodeLabel label) {
    switch (label) {
        case NodeLabel::Problem: return {{"statement", "s"}, {"domain", "d"}};
        case NodeLabel::Contradiction: return {{"improving", "a"}, {"worsening", "b"}};
        case NodeLabel::Principle:
            return {{"name", "Segmentation"}, {"triz_number", std::int64_t{1}}, {"description", ""}};
        case NodeLabel::UserNeed: return {{"persona", "p"}, {"job_to_be_done", "j"}, {"pain_level", 0.5}};
        case NodeLabel::Transformation: return {{"scamper_type", "Adapt"}, {"description", ""}};
        case NodeLabel::Analogy: return {{"source_domain", "biology"}, {"mechanism", "m"}};
        case NodeLabel::PriorArt: return {{"title", "t"}, {"source", "s"}, {"similarity", 0.1}};
        case NodeLabel::Claim: return {{"text", "c"}, {"methodology", "TRIZ"}, {"strength", 0.7}};
    }
    return {};
}

}  // namespace

TEST_CASE("create_node accepts a Problem and counts it") {
    KnowledgeGraph g;
    auto id = g.create_node(NodeLabel::Problem, {{"statement", kLegalIdea}, {"domain", "legal tech"}});
    CHECK(g.node(id).text("domain") == "legal tech");
    CHECK(g.summary().count(NodeLabel::Problem) == 1);
    CHECK(g.nodes(NodeLabel::Problem).size() == 1);
}

TEST_CASE("create_node rejects missing or out-of-range properties") {
    KnowledgeGraph g;
    CHECK_THROWS_AS(g.create_node(NodeLabel::Claim, {{"text", "x"}, {"methodology", "TRIZ"}}), SchemaViolation);
    CHECK_THROWS_AS(g.create_node(NodeLabel::Claim, {{"text", "x"}, {"methodology", "BIO"}, {"strength", 0.5}}),
                    SchemaViolation);
    CHECK_THROWS_AS(g.create_node(NodeLabel::Claim, {{"text", ""}, {"methodology", "DT"}, {"strength", 0.5}}),
                    SchemaViolation);
    CHECK_THROWS_AS(g.create_node(NodeLabel::Claim, {{"text", "x"}, {"methodology", "DT"}, {"strength", 1.5}}),
                    SchemaViolation);
    CHECK_THROWS_AS(g.create_node(NodeLabel::Principle,
                                  {{"name", "n"}, {"triz_number", std::int64_t{41}}, {"description", ""}}),
                    SchemaViolation);
    CHECK_THROWS_AS(g.create_node(NodeLabel::UserNeed, {{"persona", "p"}, {"job_to_be_done", "j"}, {"pain_level", -0.1}}),
                    SchemaViolation);
    CHECK(g.summary().total_nodes == 0);

    auto before = g.summary().count(NodeLabel::Claim);
    add_claim(g, "t", Methodology::Triz, 0.7);
    CHECK(g.summary().count(NodeLabel::Claim) == before + 1);
}

TEST_CASE("every label has a satisfiable minimal property set") {
    KnowledgeGraph g;
    for (auto label : kAllNodeLabels) CHECK_NOTHROW(g.create_node(label, minimal_properties(label)));
    CHECK(g.summary().total_nodes == 8);
}

TEST_CASE("edges respect the endpoint table") {
    KnowledgeGraph g;
    auto contradiction = g.create_node(NodeLabel::Contradiction, minimal_properties(NodeLabel::Contradiction));
    auto principle = g.create_node(NodeLabel::Principle, minimal_properties(NodeLabel::Principle));
    auto e = g.create_edge(contradiction, principle, EdgeType::ResolvedBy);
    CHECK(g.find_edge(e)->type == EdgeType::ResolvedBy);
    CHECK_THROWS_AS(g.create_edge(principle, contradiction, EdgeType::ResolvedBy), SchemaViolation);
    CHECK_THROWS_AS(g.create_edge(contradiction, NodeId{999}, EdgeType::ResolvedBy), UnknownNode);
}

TEST_CASE("CONVERGENT edges are unique per unordered pair and cross-methodology") {
    KnowledgeGraph g;
    auto a = add_claim(g, "a", Methodology::Triz);
    auto a2 = add_claim(g, "a2", Methodology::Triz);
    auto b = add_claim(g, "b", Methodology::DesignThinking);
    CHECK_THROWS_AS(g.create_edge(a, a2, EdgeType::Convergent, {{"similarity", 0.9}}), SchemaViolation);

    auto first = g.create_edge(a, b, EdgeType::Convergent, {{"similarity", 0.8}});
    auto second = g.create_edge(b, a, EdgeType::Convergent, {{"similarity", 0.9}});
    CHECK(first == second);
    CHECK(g.edges(EdgeType::Convergent).size() == 1);
    auto edge = *g.convergent_edge(b, a);
    CHECK(std::get<std::int64_t>(edge.properties.at("count")) == 2);
    CHECK(*as_number(edge.properties.at("similarity")) == doctest::Approx(0.9));
}

TEST_CASE("get_claims keeps insertion order and filters") {
    KnowledgeGraph g;
    CHECK(g.get_claims().empty());
    auto s = add_claim(g, "s", Methodology::Scamper);
    auto t = add_claim(g, "t", Methodology::Triz);
    auto d = add_claim(g, "d", Methodology::DesignThinking);
    auto all = g.get_claims();
    REQUIRE(all.size() == 3);
    CHECK(all[0].id == s);
    CHECK(all[1].id == t);
    CHECK(all[2].id == d);
    auto triz = g.get_claims(Methodology::Triz);
    REQUIRE(triz.size() == 1);
    CHECK(triz[0].id == t);
}

TEST_CASE("supporting subgraph of a TRIZ chain") {
    KnowledgeGraph g;
    auto problem = g.create_node(NodeLabel::Problem, minimal_properties(NodeLabel::Problem));
    auto need = g.create_node(NodeLabel::UserNeed, minimal_properties(NodeLabel::UserNeed));
    g.create_edge(need, problem, EdgeType::Motivates);
    auto c = g.create_node(NodeLabel::Contradiction, minimal_properties(NodeLabel::Contradiction));
    g.create_edge(problem, c, EdgeType::HasContradiction);
    auto p1 = g.create_node(NodeLabel::Principle, minimal_properties(NodeLabel::Principle));
    auto p2 = g.create_node(NodeLabel::Principle, minimal_properties(NodeLabel::Principle));
    auto claim = add_claim(g, "claim", Methodology::Triz);
    for (auto p : {p1, p2}) {
        g.create_edge(c, p, EdgeType::ResolvedBy);
        g.create_edge(p, claim, EdgeType::Supports);
    }
    auto other = add_claim(g, "other", Methodology::DesignThinking);
    g.create_edge(claim, other, EdgeType::Convergent, {{"similarity", 0.9}});

    auto sub = g.get_supporting_subgraph(claim);
    CHECK(sub.contains(claim));
    CHECK(sub.count(NodeLabel::Contradiction) == 1);
    CHECK(sub.count(NodeLabel::Principle) == 2);
    CHECK(sub.count(NodeLabel::Problem) == 1);
    CHECK(sub.count(NodeLabel::UserNeed) == 1);
    CHECK_FALSE(sub.contains(other));
    for (const auto& e : sub.edges) {
        CHECK(sub.contains(e.src));
        CHECK(sub.contains(e.dst));
    }

    auto lone = add_claim(g, "lone", Methodology::Scamper);
    auto lone_sub = g.get_supporting_subgraph(lone);
    CHECK(lone_sub.nodes.size() == 1);
    CHECK(lone_sub.edges.empty());
    CHECK_THROWS_AS(g.get_supporting_subgraph(NodeId{12345}), UnknownNode);
}

TEST_CASE("supporting subgraph follows GENERATES") {
    KnowledgeGraph g;
    auto t = g.create_node(NodeLabel::Transformation, minimal_properties(NodeLabel::Transformation));
    auto claim = add_claim(g, "c", Methodology::Scamper);
    g.create_edge(t, claim, EdgeType::Generates);
    CHECK(g.get_supporting_subgraph(claim).contains(t));
}

TEST_CASE("summary matches enumeration after random mutations") {
    std::mt19937 rng(7);
    KnowledgeGraph g;
    CHECK(g.summary().total_nodes == 0);
    CHECK(g.summary().count(EdgeType::Convergent) == 0);
    std::vector<NodeId> claims;
    for (int step = 0; step < 300; ++step) {
        int op = static_cast<int>(rng() % 4);
        if (op < 2 || claims.size() < 2) {
            claims.push_back(add_claim(g, "c" + std::to_string(step), kAllMethodologies[rng() % 3]));
        } else if (op == 2) {
            auto a = claims[rng() % claims.size()], b = claims[rng() % claims.size()];
            try {
                g.create_edge(a, b, EdgeType::Convergent, {{"similarity", 0.7}});
            } catch (const SchemaViolation&) {
            }
        } else {
            auto idx = rng() % claims.size();
            g.remove_node(claims[idx]);
            claims.erase(claims.begin() + static_cast<long>(idx));
        }
        auto s = g.summary();
        REQUIRE(s.total_nodes == g.nodes().size());
        REQUIRE(s.total_edges == g.edges().size());
        REQUIRE(s.count(NodeLabel::Claim) == g.get_claims().size());
    }
    for (const auto& e : g.edges(EdgeType::Convergent))
        CHECK(claim_methodology(g.node(e.src)) != claim_methodology(g.node(e.dst)));
}
