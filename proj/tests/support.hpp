#pragma once

#include <chrono>
#include <deque>
#include <filesystem>
#include <random>
#include <string>

#include "ideaforge/graph.hpp"
#include "ideaforge/llm.hpp"

namespace testing {

using namespace ideaforge;

inline const std::string kLegalIdea = "voice-first legal assistant in Hindi for rural India";

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(IDEAFORGE_FIXTURES) / name;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() /
               ("ideaforge-test-" + name + "-" +
                std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    std::filesystem::create_directories(dir);
    return dir;
}

inline NodeId add_claim(KnowledgeGraph& g, const std::string& text, Methodology m, std::optional<double> strength = {}) {
    return g.create_node(NodeLabel::Claim, {{"text", text},
                                            {"methodology", std::string(to_string(m))},
                                            {"strength", strength.value_or(fixed_strength(m))}});
}

inline NodeId add_prior_art(KnowledgeGraph& g, const std::string& title, double similarity = 0.0) {
    return g.create_node(NodeLabel::PriorArt, {{"title", title}, {"source", "fixture"}, {"similarity", similarity}});
}

/// Replays a fixed queue of outcomes, then repeats the last one.
class ScriptedGenerator : public llm::TextGenerator {
public:
    explicit ScriptedGenerator(std::deque<llm::GenerationOutcome> script) : script_(std::move(script)) {}
    llm::GenerationOutcome generate(const llm::GenerationRequest& request) override {
        prompts.push_back(request.prompt);
        if (script_.size() > 1) {
            auto next = script_.front();
            script_.pop_front();
            return next;
        }
        return script_.front();
    }
    std::vector<std::string> prompts;

private:
    std::deque<llm::GenerationOutcome> script_;
};

inline llm::GenerationOutcome text(std::string s) { return llm::TextReply{std::move(s)}; }

}  // namespace testing

#include "ideaforge/agents.hpp"
#include "ideaforge/convergence.hpp"
#include "ideaforge/embedding.hpp"

namespace testing {

/// Offline agent run on the legal idea, with all three claims made convergent.
inline KnowledgeGraph legal_graph() {
    KnowledgeGraph g;
    llm::OfflineGenerator offline;
    auto problem = agents::create_problem(g, kLegalIdea, "legal tech");
    agents::run_triz(kLegalIdea, problem, g, offline);
    agents::run_design_thinking(kLegalIdea, problem, g, offline);
    agents::run_scamper(kLegalIdea, problem, g, offline);
    auto stub = StubEmbeddingProvider::from_file(fixture("legal_embeddings.json"));
    detect_convergence(g, {0.65}, stub.get());
    return g;
}

}  // namespace testing
