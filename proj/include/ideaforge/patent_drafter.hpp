#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ideaforge/graph.hpp"
#include "ideaforge/llm.hpp"
#include "ideaforge/scoring.hpp"
#include "json.hpp"

namespace ideaforge::drafting {

struct RankedClaim {
    NodeId claim;
    std::string text;
    Methodology methodology = Methodology::Triz;
    double score = 0.0;
};

struct Contradiction {
    std::string improving;
    std::string worsening;
};

struct PrincipleRef {
    std::string name;
    int triz_number = 0;
};

struct UserNeedRef {
    std::string persona;
    std::string job_to_be_done;
};

/// Everything the drafter may draw on, gathered from the top claims'
/// supporting subgraphs.
struct ContextBundle {
    std::string problem_statement;
    std::vector<Contradiction> contradictions;
    std::vector<PrincipleRef> principles;
    std::vector<UserNeedRef> user_needs;
    std::vector<RankedClaim> ranked_claims;  // best first
};

/// Throws EmptyClaimSet.
ContextBundle assemble_context(const KnowledgeGraph& graph, std::size_t top_k = 3, const ScoreWeights& weights = {});

/// Prompt text handed to the model: the context rendered as plain lines.
std::string context_prompt(const ContextBundle& context);

struct TraceStep {
    NodeId node;
    NodeLabel label = NodeLabel::Claim;
};

struct DraftClaim {
    int number = 1;
    std::string text;
    int depends_on = 0;  // 0 = independent
    NodeId source_claim;
    std::vector<TraceStep> trace;

    bool independent() const { return depends_on == 0; }
};

inline constexpr std::string_view kDisclaimer =
    "Research prototype output for ideation only. This draft is not legal advice and is not a patent "
    "application; it must be reviewed by a qualified patent professional before any use.";

struct PatentDraft {
    std::string title;
    std::string field;
    std::string background;
    std::string abstract;
    std::vector<DraftClaim> claims;
    std::string disclaimer{kDisclaimer};
    /// Sections (and "claims" when any claim text) filled from templates.
    std::vector<std::string> templated_sections;
};

/// Headed sections of model output, keyed by lowercase section name
/// (title, field, background, abstract, claims). Headers are matched
/// case-insensitively, with optional markdown '#'/'**' decoration.
std::map<std::string, std::string> parse_sections(std::string_view text);

/// Items of a "1. ..." / "2) ..." numbered list, in order of appearance.
std::vector<std::string> parse_numbered_items(std::string_view text);

/// Never fails: sections the model omits or mangles come from templates
/// interpolating the context. Claim 1 is independent and corresponds to the
/// top-ranked claim; later claims depend on claim 1. Traces are left empty;
/// see attach_traces.
PatentDraft draft(const ContextBundle& context, llm::TextGenerator& llm, const llm::GenerationRequest& base = {});

struct ClaimTrace {
    int number = 0;
    NodeId claim;
    std::vector<TraceStep> path;  // ends at the Claim node
};

/// Graph path grounding each numbered claim: Problem -> Contradiction ->
/// Principle -> Claim for TRIZ, UserNeed -> Problem -> Claim for DT,
/// Transformation -> Claim for SCAMPER. Throws BrokenTrace when a claim (or
/// the problem it names) no longer exists.
std::vector<ClaimTrace> trace_claims(const PatentDraft& draft, const KnowledgeGraph& graph);

/// trace_claims, stored into each DraftClaim.
void attach_traces(PatentDraft& draft, const KnowledgeGraph& graph);

std::string render_markdown(const PatentDraft& draft);
nlohmann::json to_json(const PatentDraft& draft);

}  // namespace ideaforge::drafting
