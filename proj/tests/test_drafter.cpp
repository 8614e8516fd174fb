#include "doctest.h"
#include "ideaforge/error.hpp"
#include "ideaforge/patent_drafter.hpp"
#include "support.hpp"

using namespace testing;
using namespace ideaforge::drafting;

namespace {

std::vector<NodeLabel> labels(const std::vector<TraceStep>& path) {
    std::vector<NodeLabel> out;
    for (const auto& s : path) out.push_back(s.label);
    return out;
}

const std::string kStubDraft = R"(Here is your draft.

**Title:** Voice Legal Notice Interpreter

## Field
Speech interfaces for legal information access.

Background: Rural citizens struggle
to read court notices.

Abstract: A voice-first system reads and explains legal notices in Hindi.

Claims:
1. A voice interface that explains a court notice.
2. The interface of claim 1, wherein the language is Hindi.
3. The interface of claim 1, further comprising a triage dialogue.
)";

}  // namespace

TEST_CASE("assemble_context on the legal graph") {
    auto g = legal_graph();
    auto ctx = assemble_context(g, 3);
    REQUIRE(ctx.ranked_claims.size() == 3);
    CHECK(ctx.ranked_claims[0].methodology == Methodology::Triz);
    CHECK(ctx.contradictions.size() == 1);
    CHECK(ctx.principles.size() == 2);
    CHECK(ctx.user_needs.size() == 1);
    CHECK(ctx.problem_statement == kLegalIdea);
    CHECK(assemble_context(g, 1).ranked_claims.size() == 1);

    KnowledgeGraph bare;
    add_claim(bare, "lonely claim", Methodology::Scamper);
    auto bare_ctx = assemble_context(bare, 3);
    CHECK(bare_ctx.contradictions.empty());
    CHECK(bare_ctx.ranked_claims.size() == 1);
    CHECK_THROWS_AS(assemble_context(KnowledgeGraph{}, 3), EmptyClaimSet);
}

TEST_CASE("unavailable model gives a fully templated draft") {
    auto g = legal_graph();
    llm::OfflineGenerator offline;
    auto d = draft(assemble_context(g, 3), offline);
    CHECK_FALSE(d.title.empty());
    CHECK_FALSE(d.field.empty());
    CHECK_FALSE(d.background.empty());
    CHECK_FALSE(d.abstract.empty());
    REQUIRE(d.claims.size() == 3);
    CHECK(d.claims[0].independent());
    CHECK(d.claims[1].depends_on == 1);
    CHECK(d.claims[2].text.rfind("The method of claim 1", 0) == 0);
    CHECK(d.templated_sections.size() == 5);
    CHECK(d.disclaimer == kDisclaimer);
    auto md = render_markdown(d);
    CHECK(md.find(std::string(kDisclaimer)) != std::string::npos);
    for (auto h : {"## Field", "## Background", "## Abstract", "## Claims"}) CHECK(md.find(h) != std::string::npos);
}

TEST_CASE("well-headed model output is used verbatim") {
    auto g = legal_graph();
    auto ctx = assemble_context(g, 3);
    ScriptedGenerator gen({text(kStubDraft)});
    auto d = draft(ctx, gen);
    CHECK(d.title == "Voice Legal Notice Interpreter");
    CHECK(d.field == "Speech interfaces for legal information access.");
    CHECK(d.background == "Rural citizens struggle\nto read court notices.");
    CHECK(d.abstract == "A voice-first system reads and explains legal notices in Hindi.");
    REQUIRE(d.claims.size() == 3);
    CHECK(d.claims[0].text == "A voice interface that explains a court notice.");
    CHECK(d.claims[2].text == "The interface of claim 1, further comprising a triage dialogue.");
    CHECK(d.claims[0].source_claim == ctx.ranked_claims[0].claim);
    CHECK(d.templated_sections.empty());
}

TEST_CASE("a missing section falls back to its template alone") {
    auto g = legal_graph();
    auto ctx = assemble_context(g, 3);
    std::string without_abstract = kStubDraft;
    auto pos = without_abstract.find("Abstract:");
    without_abstract.erase(pos, without_abstract.find("\n", pos) - pos);
    ScriptedGenerator gen({text(without_abstract)});
    auto d = draft(ctx, gen);
    CHECK(d.templated_sections == std::vector<std::string>{"abstract"});
    CHECK(d.title == "Voice Legal Notice Interpreter");
    CHECK_FALSE(d.abstract.empty());
}

TEST_CASE("trace paths per methodology") {
    auto g = legal_graph();
    llm::OfflineGenerator offline;
    auto d = draft(assemble_context(g, 3), offline);
    auto traces = trace_claims(d, g);
    REQUIRE(traces.size() == d.claims.size());
    for (const auto& t : traces) {
        auto claim = g.node(t.claim);
        REQUIRE(t.path.back().node == t.claim);
        for (const auto& step : t.path) CHECK(g.node(step.node).label == step.label);
        switch (claim_methodology(claim)) {
            case Methodology::Triz:
                CHECK(labels(t.path) == std::vector<NodeLabel>{NodeLabel::Problem, NodeLabel::Contradiction,
                                                               NodeLabel::Principle, NodeLabel::Claim});
                break;
            case Methodology::DesignThinking:
                CHECK(labels(t.path) ==
                      std::vector<NodeLabel>{NodeLabel::UserNeed, NodeLabel::Problem, NodeLabel::Claim});
                break;
            case Methodology::Scamper:
                CHECK(labels(t.path) == std::vector<NodeLabel>{NodeLabel::Transformation, NodeLabel::Claim});
                break;
        }
    }
    g.remove_node(d.claims[1].source_claim);
    CHECK_THROWS_AS(trace_claims(d, g), BrokenTrace);
}

TEST_CASE("claim 1 derives from the top-ranked claim") {
    auto g = legal_graph();
    auto top = rank_claims(g).front().claim;
    llm::OfflineGenerator offline;
    auto d = draft(assemble_context(g, 3), offline);
    CHECK(d.claims[0].source_claim == top);
    CHECK(d.claims[0].text.find(claim_text(g.node(top))) == 0);
}

TEST_CASE("numbered item parsing") {
    auto items = parse_numbered_items("1. First\n   continued\n2) Second\nnoise\n");
    CHECK(items == std::vector<std::string>{"First continued", "Second noise"});
}
