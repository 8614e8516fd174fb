#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ideaforge/convergence.hpp"
#include "ideaforge/embedding.hpp"
#include "ideaforge/graph.hpp"
#include "ideaforge/llm.hpp"
#include "ideaforge/patent_drafter.hpp"
#include "ideaforge/scoring.hpp"
#include "ideaforge/snapshot.hpp"
#include "json.hpp"

namespace ideaforge::pipeline {

struct PipelineConfig {
    std::string idea;
    std::string domain = "general";
    double theta = 0.65;
    std::string model_name{llm::kDefaultModel};
    bool offline = false;
    std::size_t max_prior_art = 5;
    std::size_t top_k = 3;
    ScoreWeights weights;
    double challenge_threshold = 0.2;
    std::filesystem::path output_dir = "ideaforge-out";
    /// Defaults to <output_dir>/graph.snapshot.json.
    std::filesystem::path snapshot_path;
    std::optional<std::filesystem::path> prior_art_fixture;
    std::optional<std::filesystem::path> embedding_stub;
    std::string llm_endpoint{llm::kDefaultEndpoint};
    std::optional<std::string> embedding_endpoint;
    std::optional<ExportFormat> export_format;
    /// OpenMP similarity kernels; false selects the serial reference.
    bool parallel = true;
};

/// Throws UsageError.
void validate(const PipelineConfig& config);

inline constexpr std::array<std::string_view, 8> kStepNames = {
    "create_problem",   "triz_agent",         "design_thinking_agent", "scamper_agent",
    "prior_art_agent",  "convergence_detection", "innovation_scoring", "patent_drafting",
};

struct StepRecord {
    std::string name;
    double duration_ms = 0.0;
    std::size_t nodes_created = 0;
    std::size_t edges_created = 0;
    bool used_fallback = false;
    std::string note;
};

struct RunReport {
    std::string started_at;  // UTC, ISO 8601
    std::vector<StepRecord> steps;
    GraphSummary summary;
    std::vector<ConvergentPair> convergent_pairs;
    std::string similarity_source;
    std::vector<ScoreBreakdown> ranked;
    drafting::PatentDraft draft;
    GraphData graph;
    std::filesystem::path report_path;
    std::filesystem::path draft_path;
    std::filesystem::path snapshot_path;
};

/// Injected backends; nulls are built from the config.
struct Dependencies {
    llm::TextGenerator* llm = nullptr;
    EmbeddingProvider* embedder = nullptr;
};

/// The eight steps in order, snapshotting after each. Analysis failures
/// degrade to fallbacks; only output I/O raises (IoFailure).
RunReport run_pipeline(const PipelineConfig& config, const Dependencies& deps = {});

/// With include_volatile = false, timestamps, durations and file paths are
/// left out.
nlohmann::json to_json(const RunReport& report, bool include_volatile = true);

}  // namespace ideaforge::pipeline
