#include "ideaforge/llm.hpp"

#include <cstdlib>
#include <fmt/format.h>

#include "ideaforge/http.hpp"

namespace ideaforge::llm {

GenerationOutcome OfflineGenerator::generate(const GenerationRequest&) { return Unavailable{"offline"}; }

OllamaGenerator::OllamaGenerator(std::string base_url) : base_url_(std::move(base_url)) {
    while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

GenerationOutcome OllamaGenerator::generate(const GenerationRequest& request) {
    if (request.prompt.empty()) return Unavailable{"empty prompt"};
    if (request.timeout.count() <= 0) return Unavailable{"timeout must be positive"};
    nlohmann::json body = {
        {"model", request.model_name},
        {"prompt", request.prompt},
        {"stream", false},
        {"options", {{"temperature", request.temperature}, {"num_predict", request.max_tokens}}},
    };
    auto res = net::http_post_json(base_url_ + "/api/generate", body.dump(), request.timeout);
    if (!res.ok) return Unavailable{"transport: " + res.error};
    if (res.status != 200) return Unavailable{fmt::format("HTTP {}", res.status)};
    auto doc = nlohmann::json::parse(res.body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("response") || !doc["response"].is_string())
        return Unavailable{"response body lacks a 'response' string"};
    return TextReply{doc["response"].get<std::string>()};
}

std::optional<std::string> extract_json_object(std::string_view text) {
    auto start = text.find('{');
    if (start != std::string_view::npos) {
        int depth = 0;
        bool in_string = false, escaped = false;
        for (auto i = start; i < text.size(); ++i) {
            char c = text[i];
            if (in_string) {
                if (escaped)
                    escaped = false;
                else if (c == '\\')
                    escaped = true;
                else if (c == '"')
                    in_string = false;
                continue;
            }
            if (c == '"')
                in_string = true;
            else if (c == '{')
                ++depth;
            else if (c == '}' && --depth == 0)
                return std::string(text.substr(start, i - start + 1));
        }
        // Unbalanced from here; nothing later can close it either.
        return std::nullopt;
    }
    return std::nullopt;
}

JsonOutcome parse_json_reply(const GenerationOutcome& outcome, std::span<const std::string> required_keys) {
    if (auto* u = std::get_if<Unavailable>(&outcome)) return *u;
    if (auto* m = std::get_if<Malformed>(&outcome)) return *m;
    const auto& raw = std::get<TextReply>(outcome).content;
    auto block = extract_json_object(raw);
    if (!block) return Malformed{raw, "no JSON object found"};
    auto doc = nlohmann::json::parse(*block, nullptr, false);
    if (doc.is_discarded()) return Malformed{raw, "invalid JSON object"};
    for (const auto& key : required_keys)
        if (!doc.contains(key)) return Malformed{raw, "missing key " + key};
    return doc;
}

JsonOutcome generate_json(TextGenerator& generator, const GenerationRequest& request,
                          std::span<const std::string> required_keys) {
    auto first = parse_json_reply(generator.generate(request), required_keys);
    if (!std::holds_alternative<Malformed>(first)) return first;
    auto retry = request;
    retry.prompt += kJsonOnlySuffix;
    return parse_json_reply(generator.generate(retry), required_keys);
}

std::optional<std::string> process_env(const char* name) {
    if (const char* v = std::getenv(name); v && *v) return std::string(v);
    return std::nullopt;
}

std::string resolve_model_name(const std::optional<std::string>& flag, const EnvLookup& env) {
    if (flag && !flag->empty()) return *flag;
    if (auto v = env("OLLAMA_MODEL"); v && !v->empty()) return *v;
    return std::string(kDefaultModel);
}

}  // namespace ideaforge::llm
