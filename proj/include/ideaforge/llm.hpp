#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

namespace ideaforge::llm {

inline constexpr std::string_view kDefaultModel = "tinyllama";
inline constexpr std::string_view kDefaultEndpoint = "http://localhost:11434";

struct GenerationRequest {
    std::string prompt;
    std::string model_name{kDefaultModel};
    int max_tokens = 512;
    double temperature = 0.2;
    std::chrono::milliseconds timeout = std::chrono::seconds(60);
};

struct TextReply {
    std::string content;
};

struct Malformed {
    std::string raw;
    std::string reason;
};

struct Unavailable {
    std::string reason;
};

using GenerationOutcome = std::variant<TextReply, Malformed, Unavailable>;
using JsonOutcome = std::variant<nlohmann::json, Malformed, Unavailable>;

/// Text-generation backend. Implementations never throw; every failure is an
/// outcome.
class TextGenerator {
public:
    virtual ~TextGenerator() = default;
    virtual GenerationOutcome generate(const GenerationRequest& request) = 0;
};

/// Always Unavailable("offline"); never touches the network.
class OfflineGenerator : public TextGenerator {
public:
    GenerationOutcome generate(const GenerationRequest& request) override;
};

/// Ollama-compatible POST {base_url}/api/generate.
class OllamaGenerator : public TextGenerator {
public:
    explicit OllamaGenerator(std::string base_url = std::string(kDefaultEndpoint));
    GenerationOutcome generate(const GenerationRequest& request) override;

private:
    std::string base_url_;
};

/// First balanced {...} block of `text`, honouring string literals and
/// escapes. nullopt when there is none.
std::optional<std::string> extract_json_object(std::string_view text);

/// Pure: same outcome and keys always give the same result.
JsonOutcome parse_json_reply(const GenerationOutcome& outcome, std::span<const std::string> required_keys);

inline constexpr std::string_view kJsonOnlySuffix = "\nRespond with JSON only.";

/// generate + parse_json_reply, retrying once on Malformed with
/// kJsonOnlySuffix appended to the prompt.
JsonOutcome generate_json(TextGenerator& generator, const GenerationRequest& request,
                          std::span<const std::string> required_keys);

using EnvLookup = std::function<std::optional<std::string>(const char*)>;
std::optional<std::string> process_env(const char* name);

/// Flag wins over OLLAMA_MODEL, which wins over the default.
std::string resolve_model_name(const std::optional<std::string>& flag, const EnvLookup& env = process_env);

}  // namespace ideaforge::llm
