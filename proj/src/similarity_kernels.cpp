#include "ideaforge/similarity_kernels.hpp"

#include <cmath>

#include "ideaforge/text.hpp"

namespace ideaforge::kernels {

double cosine_unchecked(std::span<const double> u, std::span<const double> v) {
    double dot = 0.0, uu = 0.0, vv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    return dot / (std::sqrt(uu) * std::sqrt(vv));
}

void pairwise_cosine_serial(std::span<const std::vector<double>> vectors, std::span<const IndexPair> pairs,
                            std::span<double> out) {
    for (std::size_t k = 0; k < pairs.size(); ++k)
        out[k] = cosine_unchecked(vectors[pairs[k].a], vectors[pairs[k].b]);
}

void pairwise_cosine_parallel(std::span<const std::vector<double>> vectors, std::span<const IndexPair> pairs,
                              std::span<double> out) {
    const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k)
        out[k] = cosine_unchecked(vectors[pairs[k].a], vectors[pairs[k].b]);
}

void pairwise_jaccard_serial(std::span<const std::vector<std::string>> sets, std::span<const IndexPair> pairs,
                             std::span<double> out) {
    for (std::size_t k = 0; k < pairs.size(); ++k) out[k] = text::jaccard_sets(sets[pairs[k].a], sets[pairs[k].b]);
}

void pairwise_jaccard_parallel(std::span<const std::vector<std::string>> sets, std::span<const IndexPair> pairs,
                               std::span<double> out) {
    const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < n; ++k) out[k] = text::jaccard_sets(sets[pairs[k].a], sets[pairs[k].b]);
}

}  // namespace ideaforge::kernels
