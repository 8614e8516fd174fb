#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ideaforge::text {

/// Lowercased maximal runs of ASCII letters/digits, in order, duplicates kept.
/// Bytes >= 0x80 count as token characters so UTF-8 words survive intact.
std::vector<std::string> tokenize(std::string_view text);

/// Sorted, deduplicated tokens.
std::vector<std::string> token_set(std::string_view text);

bool is_stopword(std::string_view token);
std::span<const std::string_view> stopwords();

/// Tokens with stopwords removed, first occurrence order, deduplicated.
std::vector<std::string> informative_tokens(std::string_view text, std::size_t limit = SIZE_MAX);

/// |A ∩ B| / |A ∪ B| over sorted unique token vectors. Both empty gives 1.
double jaccard_sets(std::span<const std::string> a, std::span<const std::string> b);

/// Jaccard similarity of the token sets of two texts.
double jaccard(std::string_view a, std::string_view b);

std::string join(std::span<const std::string> parts, std::string_view sep);

/// Collapses whitespace runs (including newlines) to single spaces and trims.
std::string squash_whitespace(std::string_view s);

}  // namespace ideaforge::text
