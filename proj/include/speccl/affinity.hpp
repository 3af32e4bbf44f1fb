#pragma once

#include <cstddef>
#include <optional>

#include "speccl/matrix.hpp"

namespace speccl {

/// Symmetric pairwise similarity with unit diagonal, entries in [0, 1].
struct SimilarityMatrix {
    Matrix S;
    double sigma = 0.0;
    std::optional<std::size_t> sparsified_k;

    std::size_t size() const { return S.rows(); }
};

/// S_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)), evaluated once per unordered
/// pair and mirrored. Values below the smallest normal double are stored as 0.
SimilarityMatrix gaussian_similarity(const Matrix& X, double sigma);

/// Median of the n(n-1)/2 pairwise Euclidean distances; the default kernel
/// bandwidth when the caller passes none.
double median_heuristic_sigma(const Matrix& X);

/// Keeps off-diagonal entry (i, j) iff j is among the k most similar
/// neighbors of i or vice versa (symmetric-OR); everything else becomes 0.
SimilarityMatrix knn_sparsify(const SimilarityMatrix& S, std::size_t k);

}  // namespace speccl
