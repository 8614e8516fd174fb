#include "ideaforge/prior_art.hpp"

#include <boost/property_tree/ptree.hpp>
#include <cctype>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>
#include <fstream>
#include <mutex>
#include <spdlog/spdlog.h>
#include <sstream>
#include <thread>

#include "ideaforge/error.hpp"
#include "ideaforge/http.hpp"
#include "ideaforge/text.hpp"

namespace ideaforge::prior_art {

namespace pt = boost::property_tree;

namespace {

std::string_view local_name(std::string_view tag) {
    auto colon = tag.rfind(':');
    return colon == std::string_view::npos ? tag : tag.substr(colon + 1);
}

const pt::ptree* child(const pt::ptree& tree, std::string_view name) {
    for (const auto& [tag, sub] : tree)
        if (local_name(tag) == name) return &sub;
    return nullptr;
}

std::string child_text(const pt::ptree& tree, std::string_view name) {
    auto* c = child(tree, name);
    return c ? text::squash_whitespace(c->data()) : std::string{};
}

std::string url_encode(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == ':')
            out.push_back(static_cast<char>(c));
        else if (c == ' ')
            out.push_back('+');
        else
            out += fmt::format("%{:02X}", c);
    }
    return out;
}

void wait_for_rate_limit(std::chrono::milliseconds min_interval) {
    static std::mutex mutex;
    static std::optional<std::chrono::steady_clock::time_point> last;
    std::lock_guard lock(mutex);
    auto now = std::chrono::steady_clock::now();
    if (last && now - *last < min_interval) std::this_thread::sleep_for(min_interval - (now - *last));
    last = std::chrono::steady_clock::now();
}

std::optional<double> model_similarity(const AttachOptions& options, std::string_view idea,
                                       const PriorArtRecord& record) {
    if (!options.llm) return std::nullopt;
    auto request = options.base_request;
    request.prompt = fmt::format(
        "Rate how similar this prior-art paper is to the idea, from 0 (unrelated) to 1 (same invention).\n"
        "Idea: {}\nPaper title: {}\nPaper abstract: {}\nReturn JSON: {{\"similarity\": 0.0}}",
        idea, record.title, record.abstract);
    static const std::vector<std::string> keys{"similarity"};
    auto outcome = llm::generate_json(*options.llm, request, keys);
    auto* doc = std::get_if<nlohmann::json>(&outcome);
    if (!doc || !(*doc)["similarity"].is_number()) return std::nullopt;
    double v = (*doc)["similarity"].get<double>();
    if (!(v >= 0.0 && v <= 1.0)) return std::nullopt;
    return v;
}

}  // namespace

std::string derive_query(std::string_view idea, std::size_t max_terms) {
    auto tokens = text::informative_tokens(idea, max_terms);
    if (tokens.empty()) throw EmptyIdea("idea has no informative terms to search for");
    return text::join(tokens, " ");
}

std::string search_url(std::string_view endpoint, std::string_view query, std::size_t max_results) {
    return fmt::format("{}?search_query=all:{}&max_results={}", endpoint, url_encode(query), max_results);
}

std::optional<std::vector<PriorArtRecord>> parse_atom_feed(std::string_view xml, std::size_t max_results) {
    pt::ptree doc;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, doc, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
        spdlog::warn("prior-art feed is not well-formed XML: {}", e.what());
        return std::nullopt;
    }
    const pt::ptree* feed = child(doc, "feed");
    if (!feed) {
        spdlog::warn("prior-art document has no Atom feed root");
        return std::nullopt;
    }
    std::vector<PriorArtRecord> records;
    for (const auto& [tag, entry] : *feed) {
        if (records.size() >= max_results) break;
        if (local_name(tag) != "entry") continue;
        PriorArtRecord r;
        r.title = child_text(entry, "title");
        r.abstract = child_text(entry, "summary");
        r.source = child_text(entry, "id");
        if (r.title.empty()) continue;
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<PriorArtRecord> search(const std::string& query, std::size_t max_results, const SearchConfig& config) {
    std::string body;
    switch (config.mode) {
        case SearchConfig::Mode::Offline: return {};
        case SearchConfig::Mode::Fixture: {
            std::ifstream in(config.fixture, std::ios::binary);
            if (!in) {
                spdlog::warn("prior-art fixture {} is unreadable", config.fixture.string());
                return {};
            }
            std::stringstream buf;
            buf << in.rdbuf();
            body = buf.str();
            break;
        }
        case SearchConfig::Mode::Online: {
            wait_for_rate_limit(config.min_interval);
            auto res = net::http_get(search_url(config.endpoint, query, max_results), config.timeout);
            if (!res.ok || res.status != 200) {
                spdlog::warn("arXiv query failed: {}", res.ok ? fmt::format("HTTP {}", res.status) : res.error);
                return {};
            }
            body = std::move(res.body);
            break;
        }
    }
    return parse_atom_feed(body, max_results).value_or(std::vector<PriorArtRecord>{});
}

AttachResult score_and_attach(std::span<PriorArtRecord> records, std::string_view idea, KnowledgeGraph& graph,
                              const AttachOptions& options) {
    AttachResult result;
    const auto claims = graph.get_claims();
    std::vector<std::vector<std::string>> claim_sets;
    for (const auto& c : claims) claim_sets.push_back(text::token_set(claim_text(c)));
    const auto idea_set = text::token_set(idea);

    for (auto& record : records) {
        const auto record_set = text::token_set(record.title + " " + record.abstract);
        record.similarity = text::jaccard_sets(record_set, idea_set);
        if (auto refined = model_similarity(options, idea, record)) record.similarity = *refined;

        auto id = graph.create_node(NodeLabel::PriorArt, {{"title", record.title},
                                                          {"source", record.source},
                                                          {"similarity", record.similarity},
                                                          {"abstract", record.abstract}});
        result.prior_art_ids.push_back(id);
        for (std::size_t i = 0; i < claims.size(); ++i) {
            if (text::jaccard_sets(record_set, claim_sets[i]) >= options.challenge_threshold) {
                graph.create_edge(id, claims[i].id, EdgeType::Challenges);
                ++result.challenges;
            }
        }
    }
    return result;
}

}  // namespace ideaforge::prior_art
