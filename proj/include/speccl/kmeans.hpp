#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "speccl/matrix.hpp"
#include "speccl/rng.hpp"

namespace speccl {

struct KMeansParams {
    std::size_t k = 0;
    std::uint64_t seed = 1;
    std::size_t restarts = 20;
    std::size_t max_iter = 300;
    double tol = 1e-9;
};

struct ClusteringResult {
    std::vector<int> labels;  // n values in [0, k)
    Matrix centroids;         // k x d
    double inertia = 0.0;     // sum of squared distances to assigned centroid
    std::uint64_t seed = 0;
    std::size_t restarts_used = 0;
    std::size_t iterations = 0;  // Lloyd iterations of the winning restart
};

/// k-means++ seeding: first centroid uniform over rows, each next drawn with
/// probability proportional to squared distance from the nearest chosen one.
/// Returns the chosen row indices in draw order.
std::vector<std::size_t> kmeanspp_indices(const Matrix& points, std::size_t k, SplitMix64& rng);

/// Lloyd iterations from k-means++ starts, one independent RNG stream per
/// restart, best (lowest-inertia) restart wins with ties going to the lower
/// restart index. Empty clusters are repaired by stealing the point farthest
/// from its current centroid.
ClusteringResult kmeans(const Matrix& points, const KMeansParams& params);

}  // namespace speccl
