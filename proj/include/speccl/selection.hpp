#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "speccl/affinity.hpp"
#include "speccl/kmeans.hpp"
#include "speccl/matrix.hpp"
#include "speccl/spectral.hpp"

namespace speccl {

enum class SilhouetteSpace { kEmbedding, kFeatures };

std::string to_string(SilhouetteSpace space);

struct SilhouetteResult {
    std::vector<double> per_point;  // s(i) in [-1, 1]
    double mean = 0.0;              // unweighted average
};

/// Consecutive differences of an ascending spectrum:
/// gaps[i] = eigenvalues[i+1] - eigenvalues[i]. Gap positions are 1-indexed
/// wherever they denote a candidate cluster count.
std::vector<double> eigen_gaps(const std::vector<double>& eigenvalues);

/// argmax of the gap over 1-indexed positions in [k_min, k_max]; ties go to
/// the smallest index.
std::size_t optimal_k_eigengap(const std::vector<double>& gaps, std::size_t k_min,
                               std::size_t k_max);

/// Rousseeuw silhouette: a(i) mean distance within own cluster (self
/// excluded), b(i) smallest mean distance to another cluster,
/// s(i) = (b - a) / max(a, b). Singleton clusters score 0.
SilhouetteResult silhouette(const Matrix& points, const std::vector<int>& labels);

struct SweepConfig {
    LaplacianVariant variant = LaplacianVariant::kSymmetricNormalized;
    bool row_normalize = true;
    std::size_t k_min = 2;
    std::size_t k_max = 10;
    KMeansParams kmeans;  // .k is overwritten per candidate
    SilhouetteSpace space = SilhouetteSpace::kEmbedding;
    const Matrix* features = nullptr;  // required when space == kFeatures
};

struct SelectionReport {
    std::vector<double> eigenvalues;  // ascending, all n
    std::vector<double> gaps;         // n - 1 consecutive differences
    std::size_t chosen_k = 0;         // eigen-gap argmax within the searched range
    std::map<std::size_t, double> silhouette_by_k;
    SilhouetteSpace silhouette_space = SilhouetteSpace::kEmbedding;
};

/// For each candidate k in [k_min, k_max]: embed with k columns, run k-means,
/// score the clustering with the silhouette in the configured space. The
/// eigen-gap choice over the same range is included in the report.
SelectionReport sweep_k(const SimilarityMatrix& S, const SweepConfig& config);

/// Same sweep on an already-computed spectrum (config.variant is ignored;
/// the Laplacian choice is baked into `eigen`).
SelectionReport sweep_k(const EigenSystem& eigen, const SweepConfig& config);

}  // namespace speccl
