#include "ideaforge/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>

namespace ideaforge::text {

namespace {

// Fixed list so tokenization is reproducible across builds; see
// docs/stopwords.md.
constexpr std::string_view kStopwords[] = {
    "a",    "about", "an",    "and",   "are",  "as",   "at",    "be",   "by",    "can",   "could",
    "do",   "does",  "for",   "from",  "has",  "have", "how",   "i",    "if",    "in",    "into",
    "is",   "it",    "its",   "may",   "might", "more", "most", "not",  "of",    "on",    "or",
    "our",  "should", "so",   "such",  "than", "that", "the",   "their", "them", "then",  "there",
    "these", "they", "this",  "to",    "was",  "we",   "were",  "what", "which", "with",
};

bool token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

char lower(unsigned char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c); }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (token_char(c)) {
            cur.push_back(lower(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> token_set(std::string_view text) {
    auto tokens = tokenize(text);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    return tokens;
}

bool is_stopword(std::string_view token) {
    return std::find(std::begin(kStopwords), std::end(kStopwords), token) != std::end(kStopwords);
}

std::span<const std::string_view> stopwords() { return kStopwords; }

std::vector<std::string> informative_tokens(std::string_view text, std::size_t limit) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (auto& tok : tokenize(text)) {
        if (out.size() >= limit) break;
        if (is_stopword(tok) || !seen.insert(tok).second) continue;
        out.push_back(std::move(tok));
    }
    return out;
}

double jaccard_sets(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t i = 0, j = 0, common = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    auto unions = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(unions);
}

double jaccard(std::string_view a, std::string_view b) {
    auto sa = token_set(a);
    auto sb = token_set(b);
    return jaccard_sets(sa, sb);
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string squash_whitespace(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace ideaforge::text
