#include "ideaforge/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fmt/format.h>
#include <fstream>
#include <memory>
#include <spdlog/spdlog.h>

#include "ideaforge/agents.hpp"
#include "ideaforge/error.hpp"
#include "ideaforge/mcp_server.hpp"
#include "ideaforge/prior_art.hpp"
#include "ideaforge/text.hpp"

namespace ideaforge::pipeline {

using nlohmann::json;

namespace {

std::string utc_now(const char* format) {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, format, &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) throw IoFailure(fmt::format("cannot write {}", path.string()));
}

class StepTimer {
public:
    StepTimer(RunReport& report, std::string_view name, const KnowledgeGraph& graph)
        : report_(report), graph_(graph), start_(std::chrono::steady_clock::now()) {
        record_.name = name;
        auto s = graph.summary();
        nodes_before_ = s.total_nodes;
        edges_before_ = s.total_edges;
    }

    StepRecord& record() { return record_; }

    void finish() {
        auto s = graph_.summary();
        record_.nodes_created = s.total_nodes - nodes_before_;
        record_.edges_created = s.total_edges - edges_before_;
        record_.duration_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        report_.steps.push_back(record_);
    }

private:
    RunReport& report_;
    const KnowledgeGraph& graph_;
    std::chrono::steady_clock::time_point start_;
    StepRecord record_;
    std::size_t nodes_before_ = 0;
    std::size_t edges_before_ = 0;
};

}  // namespace

void validate(const PipelineConfig& c) {
    if (c.idea.find_first_not_of(" \t\r\n") == std::string::npos) throw UsageError("idea text is empty");
    if (!(c.theta > 0.0 && c.theta <= 1.0)) throw UsageError(fmt::format("theta {} is outside (0,1]", c.theta));
    if (c.top_k < 1) throw UsageError("top-k must be at least 1");
    if (!(c.challenge_threshold >= 0.0 && c.challenge_threshold <= 1.0))
        throw UsageError("challenge threshold must lie in [0,1]");
    if (c.model_name.empty()) throw UsageError("model name is empty");
}

RunReport run_pipeline(const PipelineConfig& config, const Dependencies& deps) {
    validate(config);

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw IoFailure(fmt::format("cannot create {}: {}", config.output_dir.string(), ec.message()));

    RunReport report;
    report.started_at = utc_now("%Y-%m-%dT%H:%M:%SZ");
    report.snapshot_path =
        config.snapshot_path.empty() ? config.output_dir / "graph.snapshot.json" : config.snapshot_path;

    std::unique_ptr<llm::TextGenerator> owned_llm;
    llm::TextGenerator* generator = deps.llm;
    if (!generator) {
        if (config.offline)
            owned_llm = std::make_unique<llm::OfflineGenerator>();
        else
            owned_llm = std::make_unique<llm::OllamaGenerator>(config.llm_endpoint);
        generator = owned_llm.get();
    }

    std::unique_ptr<EmbeddingProvider> owned_embedder;
    EmbeddingProvider* embedder = deps.embedder;
    if (!embedder) {
        if (config.embedding_stub)
            owned_embedder = StubEmbeddingProvider::from_file(*config.embedding_stub);
        else if (!config.offline && config.embedding_endpoint)
            owned_embedder = std::make_unique<HttpEmbeddingProvider>(*config.embedding_endpoint);
        embedder = owned_embedder.get();
    }

    llm::GenerationRequest base;
    base.model_name = config.model_name;

    KnowledgeGraph graph;
    NodeId problem;
    auto checkpoint = [&] { snapshot_save(graph, report.snapshot_path); };

    {
        StepTimer step(report, kStepNames[0], graph);
        problem = agents::create_problem(graph, config.idea, config.domain);
        step.finish();
        checkpoint();
    }

    auto run_agent = [&](std::string_view name, auto&& agent) {
        StepTimer step(report, name, graph);
        auto r = agent(config.idea, problem, graph, *generator, base);
        step.record().used_fallback = r.used_fallback;
        step.record().note = r.fallback_reason;
        step.finish();
        checkpoint();
    };
    run_agent(kStepNames[1], agents::run_triz);
    run_agent(kStepNames[2], agents::run_design_thinking);
    run_agent(kStepNames[3], agents::run_scamper);

    {
        StepTimer step(report, kStepNames[4], graph);
        prior_art::SearchConfig search;
        if (config.prior_art_fixture) {
            search.mode = prior_art::SearchConfig::Mode::Fixture;
            search.fixture = *config.prior_art_fixture;
        } else {
            search.mode = config.offline ? prior_art::SearchConfig::Mode::Offline : prior_art::SearchConfig::Mode::Online;
        }
        std::vector<prior_art::PriorArtRecord> records;
        try {
            records = prior_art::search(prior_art::derive_query(config.idea), config.max_prior_art, search);
        } catch (const EmptyIdea& e) {
            spdlog::warn("skipping prior-art search: {}", e.what());
            step.record().note = e.what();
        }
        prior_art::AttachOptions attach;
        attach.challenge_threshold = config.challenge_threshold;
        attach.llm = generator;
        attach.base_request = base;
        auto attached = prior_art::score_and_attach(records, config.idea, graph, attach);
        if (records.empty()) {
            step.record().used_fallback = true;
            if (step.record().note.empty()) step.record().note = "no prior art retrieved";
        } else {
            step.record().note = fmt::format("{} records, {} CHALLENGES edges", records.size(), attached.challenges);
        }
        step.finish();
        checkpoint();
    }

    {
        StepTimer step(report, kStepNames[5], graph);
        ConvergenceConfig cc;
        cc.theta = config.theta;
        cc.provider = embedder ? SimilarityProvider::Embedding : SimilarityProvider::Jaccard;
        cc.parallel = config.parallel;
        auto result = detect_convergence(graph, cc, embedder);
        report.convergent_pairs = result.pairs;
        report.similarity_source = result.similarity_source;
        step.record().used_fallback = result.fell_back;
        step.record().note = fmt::format("{} pairs via {}", result.pairs.size(), result.similarity_source);
        step.finish();
        checkpoint();
    }

    {
        StepTimer step(report, kStepNames[6], graph);
        report.ranked = rank_claims(graph, config.weights);
        step.finish();
        checkpoint();
    }

    {
        StepTimer step(report, kStepNames[7], graph);
        auto context = drafting::assemble_context(graph, config.top_k, config.weights);
        report.draft = drafting::draft(context, *generator, base);
        drafting::attach_traces(report.draft, graph);
        step.record().used_fallback = !report.draft.templated_sections.empty();
        if (step.record().used_fallback)
            step.record().note = "templated: " + text::join(report.draft.templated_sections, ", ");
        step.finish();
        checkpoint();
    }

    report.summary = graph.summary();
    report.graph = graph.data();

    const auto stamp = utc_now("%Y%m%dT%H%M%SZ");
    const auto markdown = drafting::render_markdown(report.draft);
    report.draft_path = config.output_dir / "latest-draft.md";
    report.report_path = config.output_dir / "latest-report.json";
    write_file(config.output_dir / fmt::format("run-{}-draft.md", stamp), markdown);
    write_file(report.draft_path, markdown);
    const auto report_text = to_json(report).dump(2) + "\n";
    write_file(config.output_dir / fmt::format("run-{}-report.json", stamp), report_text);
    write_file(report.report_path, report_text);
    if (config.export_format) {
        auto ext = *config.export_format == ExportFormat::Dot ? "dot" : "json";
        write_file(config.output_dir / fmt::format("latest-graph.{}", ext), export_graph(graph, *config.export_format));
    }
    return report;
}

json to_json(const RunReport& r, bool include_volatile) {
    json steps = json::array();
    for (const auto& s : r.steps) {
        json step = {{"name", s.name},
                     {"nodes_created", s.nodes_created},
                     {"edges_created", s.edges_created},
                     {"used_fallback", s.used_fallback},
                     {"note", s.note}};
        if (include_volatile) step["duration_ms"] = s.duration_ms;
        steps.push_back(std::move(step));
    }
    json pairs = json::array();
    for (const auto& p : r.convergent_pairs)
        pairs.push_back({{"claim_a", to_string(p.claim_a)},
                         {"claim_b", to_string(p.claim_b)},
                         {"similarity", p.similarity},
                         {"count", p.count}});
    json ranked = json::array();
    for (const auto& b : r.ranked) ranked.push_back(mcp::breakdown_to_json(b));

    json out = {{"steps", steps},
                {"summary", mcp::summary_to_json(r.summary)},
                {"convergent_pairs", pairs},
                {"similarity_source", r.similarity_source},
                {"ranked_claims", ranked},
                {"draft", drafting::to_json(r.draft)},
                {"draft_markdown", drafting::render_markdown(r.draft)}};
    if (include_volatile) {
        out["started_at"] = r.started_at;
        out["draft_path"] = r.draft_path.string();
        out["snapshot_path"] = r.snapshot_path.string();
    }
    return out;
}

}  // namespace ideaforge::pipeline
