#include "ideaforge/patent_drafter.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fmt/format.h>
#include <regex>
#include <set>
#include <sstream>

#include "ideaforge/error.hpp"
#include "ideaforge/text.hpp"

namespace ideaforge::drafting {

namespace {

constexpr std::array<std::string_view, 5> kSections = {"title", "field", "background", "abstract", "claims"};

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string ensure_period(std::string s) {
    s = trim(s);
    if (!s.empty() && s.back() != '.') s.push_back('.');
    return s;
}

std::string lower_first(std::string s) {
    if (s.size() > 1 && std::isupper(static_cast<unsigned char>(s[0])) &&
        !std::isupper(static_cast<unsigned char>(s[1])))
        s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    return s;
}

std::string strip_trailing_period(std::string s) {
    while (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string claim_noun(std::string_view first_claim) {
    auto lower = text::tokenize(first_claim);
    if (lower.size() >= 2 && lower[1] == "method") return "method";
    if (std::find(lower.begin(), lower.end(), "system") != lower.end()) return "system";
    return "invention";
}

std::string template_title(const ContextBundle& c) {
    auto subject = c.problem_statement.empty() ? c.ranked_claims.front().text : c.problem_statement;
    if (subject.size() > 90) subject = subject.substr(0, 87) + "...";
    return "System and Method for " + subject;
}

std::string template_field(const ContextBundle& c) {
    return fmt::format("The disclosure relates to technical systems addressing the following problem: {}",
                       ensure_period(c.problem_statement.empty() ? c.ranked_claims.front().text
                                                                 : c.problem_statement));
}

std::string template_background(const ContextBundle& c) {
    std::vector<std::string> parts;
    if (!c.problem_statement.empty()) parts.push_back(ensure_period("The problem addressed is " + c.problem_statement));
    for (const auto& k : c.contradictions)
        parts.push_back(fmt::format("Existing approaches face a technical contradiction: improving {} worsens {}.",
                                    k.improving, k.worsening));
    for (const auto& u : c.user_needs)
        parts.push_back(fmt::format("{} needs to {}.", strip_trailing_period(u.persona),
                                    lower_first(strip_trailing_period(u.job_to_be_done))));
    if (parts.size() <= 1) parts.push_back("No established solution resolves these constraints together.");
    return text::join(parts, " ");
}

std::string template_abstract(const ContextBundle& c) {
    std::string out = "Disclosed is " + lower_first(ensure_period(c.ranked_claims.front().text));
    if (!c.principles.empty()) {
        std::vector<std::string> names;
        for (const auto& p : c.principles) names.push_back(fmt::format("{} ({})", p.name, p.triz_number));
        out += fmt::format(" The approach applies the inventive principles {}.", text::join(names, " and "));
    }
    std::set<Methodology> methods;
    for (const auto& r : c.ranked_claims) methods.insert(r.methodology);
    out += fmt::format(" It is supported by {} independent innovation methodolog{}.", methods.size(),
                       methods.size() == 1 ? "y" : "ies");
    return out;
}

std::string template_claim(const ContextBundle& c, std::size_t rank) {
    if (rank == 0) return ensure_period(c.ranked_claims[0].text);
    return fmt::format("The {} of claim 1, further comprising {}", claim_noun(c.ranked_claims[0].text),
                       lower_first(ensure_period(c.ranked_claims[rank].text)));
}

std::vector<TraceStep> chain_for(const Node& claim, const KnowledgeGraph& graph) {
    std::vector<TraceStep> path;
    auto first_source = [&](NodeId at, EdgeType type) -> std::optional<NodeId> {
        auto in = graph.in_edges(at, type);
        if (in.empty()) return std::nullopt;
        return std::min_element(in.begin(), in.end(), [](const Edge& a, const Edge& b) { return a.src < b.src; })
            ->src;
    };

    switch (claim_methodology(claim)) {
        case Methodology::Triz: {
            if (auto principle = first_source(claim.id, EdgeType::Supports)) {
                if (auto contradiction = first_source(*principle, EdgeType::ResolvedBy)) {
                    if (auto problem = first_source(*contradiction, EdgeType::HasContradiction))
                        path.push_back({*problem, NodeLabel::Problem});
                    path.push_back({*contradiction, NodeLabel::Contradiction});
                }
                path.push_back({*principle, NodeLabel::Principle});
            }
            break;
        }
        case Methodology::DesignThinking: {
            if (auto problem = origin_problem(claim)) {
                auto node = graph.find_node(*problem);
                if (!node || node->label != NodeLabel::Problem)
                    throw BrokenTrace(fmt::format("claim {} names missing problem {}", to_string(claim.id),
                                                  to_string(*problem)));
                if (auto need = first_source(*problem, EdgeType::Motivates)) path.push_back({*need, NodeLabel::UserNeed});
                path.push_back({*problem, NodeLabel::Problem});
            }
            break;
        }
        case Methodology::Scamper: {
            if (auto t = first_source(claim.id, EdgeType::Generates)) path.push_back({*t, NodeLabel::Transformation});
            break;
        }
    }
    path.push_back({claim.id, NodeLabel::Claim});
    return path;
}

}  // namespace

ContextBundle assemble_context(const KnowledgeGraph& graph, std::size_t top_k, const ScoreWeights& weights) {
    auto ranked = rank_claims(graph, weights);
    if (top_k == 0) top_k = 1;
    ContextBundle c;
    std::set<NodeId> seen;
    for (std::size_t i = 0; i < ranked.size() && i < top_k; ++i) {
        auto claim = graph.node(ranked[i].claim);
        c.ranked_claims.push_back({claim.id, claim_text(claim), claim_methodology(claim), ranked[i].total});
        auto sub = graph.get_supporting_subgraph(claim.id);
        for (const auto& n : sub.nodes) {
            if (!seen.insert(n.id).second) continue;
            switch (n.label) {
                case NodeLabel::Problem:
                    if (c.problem_statement.empty()) c.problem_statement = n.text("statement");
                    break;
                case NodeLabel::Contradiction: c.contradictions.push_back({n.text("improving"), n.text("worsening")}); break;
                case NodeLabel::Principle:
                    c.principles.push_back({n.text("name"), static_cast<int>(n.number("triz_number").value_or(0))});
                    break;
                case NodeLabel::UserNeed: c.user_needs.push_back({n.text("persona"), n.text("job_to_be_done")}); break;
                default: break;
            }
        }
    }
    return c;
}

std::string context_prompt(const ContextBundle& c) {
    std::ostringstream out;
    out << "Problem: " << c.problem_statement << "\n";
    for (const auto& k : c.contradictions)
        out << "Contradiction: improving " << k.improving << " worsens " << k.worsening << "\n";
    for (const auto& p : c.principles) out << "TRIZ principle " << p.triz_number << ": " << p.name << "\n";
    for (const auto& u : c.user_needs) out << "User need: " << u.persona << " - " << u.job_to_be_done << "\n";
    for (std::size_t i = 0; i < c.ranked_claims.size(); ++i)
        out << "Ranked claim " << i + 1 << " (" << to_string(c.ranked_claims[i].methodology)
            << fmt::format(", score {:.3f}): ", c.ranked_claims[i].score) << c.ranked_claims[i].text << "\n";
    return out.str();
}

std::map<std::string, std::string> parse_sections(std::string_view body) {
    static const std::regex header(
        R"(^\s*(#{1,6}\s*)?(?:\*\*)?\s*(title|field(?: of the invention)?|background(?: of the invention)?|abstract|claims)\s*(?:\*\*)?\s*(:)?\s*(?:\*\*)?\s*(.*)$)",
        std::regex::icase);
    std::map<std::string, std::string> sections;
    std::string current;
    std::istringstream in{std::string(body)};
    std::string line;
    while (std::getline(in, line)) {
        std::smatch m;
        if (std::regex_match(line, m, header) && (m[1].matched || m[3].matched || trim(m[4].str()).empty())) {
            auto name = text::tokenize(m[2].str()).front();
            current = name;
            sections[current] = trim(m[4].str());
            continue;
        }
        if (current.empty()) continue;
        auto& s = sections[current];
        if (!s.empty()) s.push_back('\n');
        s += line;
    }
    for (auto it = sections.begin(); it != sections.end();) {
        it->second = trim(it->second);
        if (it->second.empty())
            it = sections.erase(it);
        else
            ++it;
    }
    return sections;
}

std::vector<std::string> parse_numbered_items(std::string_view body) {
    static const std::regex item(R"(^\s*(\d+)[.)]\s+(.*)$)");
    std::vector<std::string> items;
    std::istringstream in{std::string(body)};
    std::string line;
    while (std::getline(in, line)) {
        std::smatch m;
        if (std::regex_match(line, m, item)) {
            items.push_back(trim(m[2].str()));
        } else if (!items.empty() && !trim(line).empty()) {
            items.back() += " " + trim(line);
        }
    }
    return items;
}

PatentDraft draft(const ContextBundle& context, llm::TextGenerator& llm, const llm::GenerationRequest& base) {
    if (context.ranked_claims.empty()) throw EmptyClaimSet("cannot draft without claims");

    auto request = base;
    request.prompt = "You are a patent drafting assistant. Using only the knowledge-graph context below, write a "
                     "patent draft with the sections 'Title:', 'Field:', 'Background:', 'Abstract:' and 'Claims:' "
                     "(a numbered list, claim 1 independent, later claims dependent on claim 1, following the "
                     "ranked claim order).\n\n" +
                     context_prompt(context);
    if (request.max_tokens < 1024) request.max_tokens = 1024;
    auto outcome = llm.generate(request);

    std::map<std::string, std::string> sections;
    if (auto* reply = std::get_if<llm::TextReply>(&outcome)) sections = parse_sections(reply->content);

    PatentDraft d;
    auto take = [&](std::string_view name, std::string& slot, std::string fallback) {
        auto it = sections.find(std::string(name));
        if (it != sections.end()) {
            slot = it->second;
        } else {
            slot = std::move(fallback);
            d.templated_sections.emplace_back(name);
        }
    };
    take("title", d.title, template_title(context));
    if (d.title.find('\n') != std::string::npos) d.title = d.title.substr(0, d.title.find('\n'));
    take("field", d.field, template_field(context));
    take("background", d.background, template_background(context));
    take("abstract", d.abstract, template_abstract(context));

    std::vector<std::string> model_claims;
    if (auto it = sections.find("claims"); it != sections.end()) model_claims = parse_numbered_items(it->second);
    bool templated_claim = false;
    for (std::size_t i = 0; i < context.ranked_claims.size(); ++i) {
        DraftClaim c;
        c.number = static_cast<int>(i + 1);
        c.depends_on = i == 0 ? 0 : 1;
        c.source_claim = context.ranked_claims[i].claim;
        if (i < model_claims.size() && !model_claims[i].empty()) {
            c.text = model_claims[i];
        } else {
            c.text = template_claim(context, i);
            templated_claim = true;
        }
        d.claims.push_back(std::move(c));
    }
    if (templated_claim) d.templated_sections.emplace_back("claims");
    return d;
}

std::vector<ClaimTrace> trace_claims(const PatentDraft& d, const KnowledgeGraph& graph) {
    std::vector<ClaimTrace> out;
    for (const auto& c : d.claims) {
        auto node = graph.find_node(c.source_claim);
        if (!node || node->label != NodeLabel::Claim)
            throw BrokenTrace(fmt::format("draft claim {} refers to missing claim node {}", c.number,
                                          to_string(c.source_claim)));
        out.push_back({c.number, c.source_claim, chain_for(*node, graph)});
    }
    return out;
}

void attach_traces(PatentDraft& d, const KnowledgeGraph& graph) {
    auto traces = trace_claims(d, graph);
    for (std::size_t i = 0; i < traces.size(); ++i) d.claims[i].trace = std::move(traces[i].path);
}

std::string render_markdown(const PatentDraft& d) {
    std::ostringstream out;
    out << "# " << d.title << "\n\n";
    out << "## Field\n\n" << d.field << "\n\n";
    out << "## Background\n\n" << d.background << "\n\n";
    out << "## Abstract\n\n" << d.abstract << "\n\n";
    out << "## Claims\n\n";
    for (const auto& c : d.claims) out << c.number << ". " << c.text << "\n";
    out << "\n## Claim traceability\n\n| Claim | Kind | Graph path |\n|---|---|---|\n";
    for (const auto& c : d.claims) {
        std::vector<std::string> steps;
        for (const auto& s : c.trace) steps.push_back(fmt::format("({}:{})", to_string(s.label), to_string(s.node)));
        out << "| " << c.number << " | " << (c.independent() ? "independent" : fmt::format("dependent on {}", c.depends_on))
            << " | " << text::join(steps, "->") << " |\n";
    }
    out << "\n---\n\n*" << d.disclaimer << "*\n";
    return out.str();
}

nlohmann::json to_json(const PatentDraft& d) {
    nlohmann::json claims = nlohmann::json::array();
    for (const auto& c : d.claims) {
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& s : c.trace) trace.push_back({{"node", to_string(s.node)}, {"label", to_string(s.label)}});
        claims.push_back({{"number", c.number},
                          {"text", c.text},
                          {"kind", c.independent() ? "independent" : "dependent"},
                          {"depends_on", c.depends_on},
                          {"source_claim", to_string(c.source_claim)},
                          {"trace", trace}});
    }
    return {{"title", d.title},          {"field", d.field},   {"background", d.background},
            {"abstract", d.abstract},    {"claims", claims},   {"disclaimer", d.disclaimer},
            {"templated_sections", d.templated_sections}};
}

}  // namespace ideaforge::drafting
