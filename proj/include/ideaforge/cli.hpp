#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ideaforge/llm.hpp"
#include "ideaforge/pipeline.hpp"
#include "ideaforge/snapshot.hpp"

namespace ideaforge::cli {

enum class Command { Run, ServeMcp, Export, Score, Report, Help };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct Invocation {
    Command command = Command::Help;
    pipeline::PipelineConfig config;
    std::filesystem::path snapshot = "ideaforge-out/graph.snapshot.json";
    ExportFormat format = ExportFormat::Json;
    std::optional<std::filesystem::path> output;
    std::string help_text;
};

/// Arguments exclude the program name. Precedence for model, theta and
/// endpoints: flag, then environment, then default. Throws UsageError whose
/// message includes the usage text.
Invocation parse_cli(const std::vector<std::string>& args, const llm::EnvLookup& env = llm::process_env);

/// Runs a parsed invocation; returns the process exit code.
int execute(const Invocation& invocation, std::istream& in, std::ostream& out, std::ostream& err);

/// parse_cli + execute with error-to-exit-code mapping.
int run_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// "w1,w2,w3,w4". Throws UsageError.
ScoreWeights parse_weights(const std::string& text);

}  // namespace ideaforge::cli
