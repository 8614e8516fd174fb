#include "ideaforge/agents.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <optional>

#include "ideaforge/error.hpp"
#include "ideaforge/text.hpp"

namespace ideaforge::agents {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 40> kTrizPrinciples = {
    "Segmentation",
    "Taking Out",
    "Local Quality",
    "Asymmetry",
    "Merging",
    "Universality",
    "Nested Doll",
    "Anti-Weight",
    "Preliminary Anti-Action",
    "Preliminary Action",
    "Beforehand Cushioning",
    "Equipotentiality",
    "The Other Way Round",
    "Spheroidality",
    "Dynamics",
    "Partial or Excessive Actions",
    "Another Dimension",
    "Mechanical Vibration",
    "Periodic Action",
    "Continuity of Useful Action",
    "Skipping",
    "Blessing in Disguise",
    "Feedback",
    "Intermediary",
    "Self-Service",
    "Copying",
    "Cheap Short-Living Objects",
    "Mechanics Substitution",
    "Pneumatics and Hydraulics",
    "Flexible Shells and Thin Films",
    "Porous Materials",
    "Color Changes",
    "Homogeneity",
    "Discarding and Recovering",
    "Parameter Changes",
    "Phase Transitions",
    "Thermal Expansion",
    "Strong Oxidants",
    "Inert Atmosphere",
    "Composite Materials",
};

struct DefaultPrinciple {
    int number;
    std::string_view description;
};

// Segmentation and Preliminary Action come first.
constexpr std::array<DefaultPrinciple, 4> kDefaultPrinciples = {{
    {1, "Divide the system into independent parts that can be delivered, used or replaced separately."},
    {10, "Perform the required change, fully or partly, before it is needed."},
    {15, "Let characteristics of the system adapt to the conditions of each use."},
    {35, "Change the state, concentration or flexibility of the system's parameters."},
}};

struct Call {
    json doc;
    bool ok = false;
    std::string reason;
};

Call ask(llm::TextGenerator& llm, const llm::GenerationRequest& base, std::string prompt,
         std::vector<std::string> keys) {
    auto request = base;
    request.prompt = std::move(prompt);
    auto outcome = llm::generate_json(llm, request, keys);
    Call call;
    if (auto* doc = std::get_if<json>(&outcome)) {
        call.doc = std::move(*doc);
        call.ok = true;
    } else if (auto* m = std::get_if<llm::Malformed>(&outcome)) {
        call.reason = "malformed: " + m->reason;
    } else {
        call.reason = "unavailable: " + std::get<llm::Unavailable>(outcome).reason;
    }
    return call;
}

std::optional<std::string> text_field(const json& obj, std::string_view key) {
    if (!obj.is_object()) return std::nullopt;
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) return std::nullopt;
    auto s = text::squash_whitespace(it->get<std::string>());
    if (s.empty()) return std::nullopt;
    return s;
}

std::optional<double> number_field(const json& obj, std::string_view key) {
    if (!obj.is_object()) return std::nullopt;
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (it->is_number()) return it->get<double>();
    if (it->is_string()) {
        try {
            std::size_t used = 0;
            auto s = it->get<std::string>();
            double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
    }
    return std::nullopt;
}

void require_problem(const KnowledgeGraph& graph, NodeId problem) {
    auto n = graph.find_node(problem);
    if (!n || n->label != NodeLabel::Problem)
        throw UnknownNode(fmt::format("no Problem node with id {}", to_string(problem)));
}

Properties claim_properties(std::string text, Methodology m, NodeId problem) {
    return {{"text", std::move(text)},
            {"methodology", std::string(to_string(m))},
            {"strength", fixed_strength(m)},
            {"problem_id", to_string(problem)}};
}

void note_fallback(AgentReport& report, std::string reason) {
    report.used_fallback = true;
    if (report.fallback_reason.empty()) report.fallback_reason = std::move(reason);
}

/// 1..5 ordinals become fractions of 5; values already in [0,1] stay.
std::optional<double> normalise_pain(double v) {
    if (std::isnan(v)) return std::nullopt;
    if (v >= 0.0 && v <= 1.0) return v;
    if (v > 1.0 && v <= 5.0 && std::floor(v) == v) return v / 5.0;
    return std::nullopt;
}

}  // namespace

std::string_view triz_principle_name(int number) {
    if (number < 1 || number > 40) return {};
    return kTrizPrinciples[static_cast<std::size_t>(number - 1)];
}

std::string_view normalise_scamper_type(std::string_view label) {
    std::string key;
    for (unsigned char c : label)
        if (std::isalpha(c)) key.push_back(static_cast<char>(std::tolower(c)));
    if (key == "substitute" || key == "substitution") return "Substitute";
    if (key == "combine" || key == "combination") return "Combine";
    if (key == "adapt" || key == "adaptation") return "Adapt";
    if (key == "modify" || key == "magnify" || key == "minify" || key == "modification") return "Modify";
    if (key == "puttootheruses" || key == "puttootheruse" || key == "puttoanotheruse")
        return "PutToOtherUses";
    if (key == "eliminate" || key == "elimination") return "Eliminate";
    if (key == "reverse" || key == "rearrange" || key == "reversal") return "Reverse";
    return {};
}

std::string idea_phrase(std::string_view idea) {
    auto tokens = text::informative_tokens(idea, 8);
    if (tokens.empty()) return text::squash_whitespace(idea);
    return text::join(tokens, " ");
}

NodeId create_problem(KnowledgeGraph& graph, std::string_view idea, std::string_view domain) {
    return graph.create_node(NodeLabel::Problem, {{"statement", text::squash_whitespace(idea)},
                                                  {"domain", std::string(domain)}});
}

AgentReport run_triz(std::string_view idea, NodeId problem, KnowledgeGraph& graph, llm::TextGenerator& llm,
                     const llm::GenerationRequest& base) {
    require_problem(graph, problem);
    AgentReport report;
    report.methodology = Methodology::Triz;
    const auto phrase = idea_phrase(idea);

    auto call = ask(llm, base,
                    fmt::format("You are a TRIZ analyst.\nIdea: {}\n"
                                "Identify the technical contradiction: the improving parameter (what is being "
                                "optimised) and the worsening parameter (what degrades as a result). Choose two "
                                "inventive principles from the 40-principle matrix that resolve it, and write one "
                                "patent claim grounded in them.\n"
                                "Return JSON: {{\"improving\": \"...\", \"worsening\": \"...\", \"principles\": "
                                "[{{\"number\": 1-40, \"name\": \"...\", \"description\": \"...\"}}, {{...}}], "
                                "\"claim\": \"...\"}}",
                                idea),
                    {"improving", "worsening", "principles", "claim"});
    if (!call.ok) note_fallback(report, call.reason);
    const json& doc = call.doc;

    auto improving = text_field(doc, "improving");
    auto worsening = text_field(doc, "worsening");
    if (call.ok && (!improving || !worsening)) note_fallback(report, "contradiction parameters missing");

    struct Chosen {
        int number;
        std::string name;
        std::string description;
    };
    std::vector<Chosen> principles;
    if (call.ok && doc["principles"].is_array()) {
        for (const auto& p : doc["principles"]) {
            if (principles.size() == 2) break;
            auto num = number_field(p, "number");
            if (!num) num = number_field(p, "triz_number");
            if (!num || std::floor(*num) != *num || *num < 1 || *num > 40) {
                note_fallback(report, "principle number outside 1..40");
                continue;
            }
            int n = static_cast<int>(*num);
            if (std::any_of(principles.begin(), principles.end(), [&](const Chosen& c) { return c.number == n; })) {
                note_fallback(report, "duplicate principle");
                continue;
            }
            auto name = text_field(p, "name").value_or(std::string(triz_principle_name(n)));
            auto desc = text_field(p, "description")
                            .value_or(fmt::format("Apply {} to resolve the contradiction.", triz_principle_name(n)));
            principles.push_back({n, std::move(name), std::move(desc)});
        }
    }
    if (call.ok && principles.size() < 2) note_fallback(report, "fewer than two usable principles");
    for (const auto& d : kDefaultPrinciples) {
        if (principles.size() == 2) break;
        if (std::any_of(principles.begin(), principles.end(), [&](const Chosen& c) { return c.number == d.number; }))
            continue;
        principles.push_back({d.number, std::string(triz_principle_name(d.number)), std::string(d.description)});
    }

    auto claim_text = text_field(doc, "claim");
    if (call.ok && !claim_text) note_fallback(report, "claim text missing");

    auto contradiction = graph.create_node(
        NodeLabel::Contradiction,
        {{"improving", improving.value_or(fmt::format("capability of {}", phrase))},
         {"worsening", worsening.value_or(fmt::format("complexity of {}", phrase))}});
    report.created_node_ids.push_back(contradiction);

    std::vector<NodeId> principle_ids;
    for (const auto& p : principles) {
        auto id = graph.create_node(NodeLabel::Principle, {{"name", p.name},
                                                           {"triz_number", std::int64_t{p.number}},
                                                           {"description", p.description}});
        principle_ids.push_back(id);
        report.created_node_ids.push_back(id);
    }

    report.claim_id = graph.create_node(
        NodeLabel::Claim,
        claim_properties(claim_text.value_or(fmt::format("A method for resolving technical contradictions in {}", phrase)),
                         Methodology::Triz, problem));
    report.created_node_ids.push_back(report.claim_id);

    report.created_edge_ids.push_back(graph.create_edge(problem, contradiction, EdgeType::HasContradiction));
    for (auto p : principle_ids)
        report.created_edge_ids.push_back(graph.create_edge(contradiction, p, EdgeType::ResolvedBy));
    for (auto p : principle_ids)
        report.created_edge_ids.push_back(graph.create_edge(p, report.claim_id, EdgeType::Supports));
    return report;
}

AgentReport run_design_thinking(std::string_view idea, NodeId problem, KnowledgeGraph& graph,
                                llm::TextGenerator& llm, const llm::GenerationRequest& base) {
    require_problem(graph, problem);
    AgentReport report;
    report.methodology = Methodology::DesignThinking;
    const auto phrase = idea_phrase(idea);

    auto call = ask(llm, base,
                    fmt::format("You are a Design Thinking facilitator running the empathy and define stages.\n"
                                "Idea: {}\n"
                                "Describe two user personas with their job-to-be-done and pain level (1-5), write "
                                "How-Might-We questions, and derive one user-centred patent claim.\n"
                                "Return JSON: {{\"personas\": [{{\"persona\": \"...\", \"job_to_be_done\": \"...\", "
                                "\"pain_level\": 1-5}}, {{...}}], \"hmw\": [\"How might we ...\"], "
                                "\"claim\": \"...\"}}",
                                idea),
                    {"personas", "claim"});
    if (!call.ok) note_fallback(report, call.reason);

    struct Need {
        std::string persona;
        std::string job;
        double pain;
    };
    const Need fallback_need{fmt::format("Primary user of {}", phrase),
                             fmt::format("Get dependable results from {} without expert help", phrase), 0.6};

    std::vector<Need> needs;
    if (call.ok && call.doc["personas"].is_array()) {
        for (const auto& p : call.doc["personas"]) {
            if (needs.size() == 2) break;
            auto persona = text_field(p, "persona");
            auto job = text_field(p, "job_to_be_done");
            if (!persona || !job) {
                note_fallback(report, "persona entry incomplete");
                continue;
            }
            auto raw_pain = number_field(p, "pain_level");
            auto pain = raw_pain ? normalise_pain(*raw_pain) : std::nullopt;
            if (!pain) note_fallback(report, "pain level unusable");
            needs.push_back({*persona, *job, pain.value_or(fallback_need.pain)});
        }
    }
    if (needs.empty()) {
        if (call.ok) note_fallback(report, "no usable personas");
        needs.push_back(fallback_need);
    } else if (needs.size() == 1) {
        note_fallback(report, "only one usable persona");
        needs.push_back(fallback_need);
    }

    std::vector<std::string> hmw;
    if (call.ok) {
        const auto& h = call.doc.contains("hmw") ? call.doc["hmw"] : json();
        if (h.is_array()) {
            for (const auto& q : h)
                if (q.is_string() && !q.get<std::string>().empty()) hmw.push_back(text::squash_whitespace(q.get<std::string>()));
        } else if (h.is_string() && !h.get<std::string>().empty()) {
            hmw.push_back(text::squash_whitespace(h.get<std::string>()));
        }
    }
    if (hmw.empty()) hmw.push_back(fmt::format("How might we make {} usable by the people who need it most?", phrase));

    auto claim_text = text_field(call.doc, "claim");
    if (call.ok && !claim_text) note_fallback(report, "claim text missing");

    std::vector<NodeId> need_ids;
    for (const auto& n : needs) {
        auto id = graph.create_node(NodeLabel::UserNeed,
                                    {{"persona", n.persona}, {"job_to_be_done", n.job}, {"pain_level", n.pain}});
        need_ids.push_back(id);
        report.created_node_ids.push_back(id);
    }

    auto props = claim_properties(claim_text.value_or(fmt::format("A user-centred system for {}", phrase)),
                                  Methodology::DesignThinking, problem);
    props["hmw"] = text::join(hmw, " | ");
    report.claim_id = graph.create_node(NodeLabel::Claim, std::move(props));
    report.created_node_ids.push_back(report.claim_id);

    for (auto id : need_ids) report.created_edge_ids.push_back(graph.create_edge(id, problem, EdgeType::Motivates));
    return report;
}

AgentReport run_scamper(std::string_view idea, NodeId problem, KnowledgeGraph& graph, llm::TextGenerator& llm,
                        const llm::GenerationRequest& base) {
    require_problem(graph, problem);
    AgentReport report;
    report.methodology = Methodology::Scamper;
    const auto phrase = idea_phrase(idea);

    auto call = ask(llm, base,
                    fmt::format("You are applying SCAMPER (Substitute, Combine, Adapt, Modify, Put to other uses, "
                                "Eliminate, Reverse).\nIdea: {}\n"
                                "Apply three different SCAMPER operations, mark the most promising one by its "
                                "0-based index, and derive one patent claim from it.\n"
                                "Return JSON: {{\"transformations\": [{{\"type\": \"Substitute\", \"description\": "
                                "\"...\"}}, {{...}}, {{...}}], \"most_promising\": 0, \"claim\": \"...\"}}",
                                idea),
                    {"transformations", "claim"});
    if (!call.ok) note_fallback(report, call.reason);

    auto default_description = [&](std::string_view type) -> std::string {
        if (type == "Substitute") return fmt::format("Substitute the primary interface of {} with an alternative", phrase);
        if (type == "Combine") return fmt::format("Combine {} with a complementary service", phrase);
        if (type == "Adapt") return fmt::format("Adapt a proven pattern from another domain to {}", phrase);
        if (type == "Modify") return fmt::format("Modify the scale or emphasis of {}", phrase);
        if (type == "PutToOtherUses") return fmt::format("Put {} to use for a different audience", phrase);
        if (type == "Eliminate") return fmt::format("Eliminate a step users must take in {}", phrase);
        return fmt::format("Reverse the order of interaction in {}", phrase);
    };

    struct Chosen {
        std::string type;
        std::string description;
        int source_index;
    };
    std::vector<Chosen> chosen;
    if (call.ok && call.doc["transformations"].is_array()) {
        int index = 0;
        for (const auto& t : call.doc["transformations"]) {
            int source = index++;
            if (chosen.size() == 3) break;
            auto label = text_field(t, "type");
            if (!label) label = text_field(t, "scamper_type");
            auto type = label ? normalise_scamper_type(*label) : std::string_view{};
            if (type.empty()) {
                note_fallback(report, "unknown SCAMPER type");
                continue;
            }
            if (std::any_of(chosen.begin(), chosen.end(), [&](const Chosen& c) { return c.type == type; })) {
                note_fallback(report, "duplicate SCAMPER type");
                continue;
            }
            auto desc = text_field(t, "description").value_or(default_description(type));
            chosen.push_back({std::string(type), std::move(desc), source});
        }
    }
    if (call.ok && chosen.size() < 3) note_fallback(report, "fewer than three usable transformations");
    for (auto type : kScamperTypes) {
        if (chosen.size() == 3) break;
        if (std::any_of(chosen.begin(), chosen.end(), [&](const Chosen& c) { return c.type == type; })) continue;
        chosen.push_back({std::string(type), default_description(type), -1});
    }

    std::size_t best = 0;
    if (call.ok) {
        if (auto idx = number_field(call.doc, "most_promising"); idx && std::floor(*idx) == *idx) {
            auto it = std::find_if(chosen.begin(), chosen.end(),
                                   [&](const Chosen& c) { return c.source_index == static_cast<int>(*idx); });
            if (it != chosen.end())
                best = static_cast<std::size_t>(it - chosen.begin());
            else
                note_fallback(report, "most promising transformation not usable");
        } else if (auto name = text_field(call.doc, "most_promising")) {
            auto type = normalise_scamper_type(*name);
            auto it = std::find_if(chosen.begin(), chosen.end(), [&](const Chosen& c) { return c.type == type; });
            if (it != chosen.end()) best = static_cast<std::size_t>(it - chosen.begin());
        }
    }

    auto claim_text = text_field(call.doc, "claim");
    if (call.ok && !claim_text) note_fallback(report, "claim text missing");

    std::vector<NodeId> ids;
    for (const auto& c : chosen) {
        auto id = graph.create_node(NodeLabel::Transformation, {{"scamper_type", c.type}, {"description", c.description}});
        ids.push_back(id);
        report.created_node_ids.push_back(id);
    }
    report.claim_id = graph.create_node(
        NodeLabel::Claim,
        claim_properties(claim_text.value_or(fmt::format("A transformed approach combining SCAMPER principles for {}", phrase)),
                         Methodology::Scamper, problem));
    report.created_node_ids.push_back(report.claim_id);
    report.created_edge_ids.push_back(graph.create_edge(ids[best], report.claim_id, EdgeType::Generates));
    return report;
}

}  // namespace ideaforge::agents
