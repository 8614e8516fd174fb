#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Pairwise similarity over a precomputed list of index pairs. Each output
// slot depends only on its own pair, so the OpenMP variants produce results
// bit-identical to the serial reference regardless of thread count.
namespace ideaforge::kernels {

struct IndexPair {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
};

/// Vectors must share one length and be non-zero.
void pairwise_cosine_serial(std::span<const std::vector<double>> vectors, std::span<const IndexPair> pairs,
                            std::span<double> out);
void pairwise_cosine_parallel(std::span<const std::vector<double>> vectors, std::span<const IndexPair> pairs,
                              std::span<double> out);

/// Token sets must be sorted and deduplicated.
void pairwise_jaccard_serial(std::span<const std::vector<std::string>> sets, std::span<const IndexPair> pairs,
                             std::span<double> out);
void pairwise_jaccard_parallel(std::span<const std::vector<std::string>> sets, std::span<const IndexPair> pairs,
                               std::span<double> out);

/// dot(u,v) / (|u| |v|), no argument checks.
double cosine_unchecked(std::span<const double> u, std::span<const double> v);

}  // namespace ideaforge::kernels
