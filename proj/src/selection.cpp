#include "speccl/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "speccl/errors.hpp"

namespace speccl {

std::string to_string(SilhouetteSpace space) {
    return space == SilhouetteSpace::kEmbedding ? "embedding" : "features";
}

std::vector<double> eigen_gaps(const std::vector<double>& eigenvalues) {
    if (eigenvalues.size() < 2) {
        throw TooShortError("need at least 2 eigenvalues, got " +
                            std::to_string(eigenvalues.size()));
    }
    std::vector<double> gaps(eigenvalues.size() - 1);
    for (std::size_t i = 0; i + 1 < eigenvalues.size(); ++i) {
        const double gap = eigenvalues[i + 1] - eigenvalues[i];
        if (gap < -1e-12) {
            throw NotSortedError("eigenvalues not ascending at position " + std::to_string(i + 1));
        }
        gaps[i] = gap;
    }
    return gaps;
}

std::size_t optimal_k_eigengap(const std::vector<double>& gaps, std::size_t k_min,
                               std::size_t k_max) {
    if (k_min < 1 || k_min > k_max || k_max > gaps.size()) {
        throw RangeInvalidError("gap search range [" + std::to_string(k_min) + ", " +
                                std::to_string(k_max) + "] invalid for " +
                                std::to_string(gaps.size()) + " gaps");
    }
    std::size_t best = k_min;
    for (std::size_t k = k_min + 1; k <= k_max; ++k) {
        if (gaps[k - 1] > gaps[best - 1]) best = k;  // strict: ties keep the smaller k
    }
    return best;
}

SilhouetteResult silhouette(const Matrix& points, const std::vector<int>& labels) {
    const std::size_t n = points.rows();
    if (n == 0) throw EmptyInputError("silhouette needs at least one point");

    int max_label = 0;
    for (int label : labels) {
        if (label < 0) throw KOutOfRangeError("cluster labels must be nonnegative");
        max_label = std::max(max_label, label);
    }
    const std::size_t k = static_cast<std::size_t>(max_label) + 1;
    std::vector<std::size_t> sizes(k, 0);
    for (int label : labels) ++sizes[static_cast<std::size_t>(label)];
    std::size_t present = 0;
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] > 0) ++present;
    }
    if (present < 2) throw SingleClusterError("silhouette needs at least 2 clusters");

    // mean distance from each point to each cluster, from one pass over pairs
    Matrix sums(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = row_distance(points, i, points, j);
            sums(i, static_cast<std::size_t>(labels[j])) += d;
            sums(j, static_cast<std::size_t>(labels[i])) += d;
        }
    }

    SilhouetteResult result;
    result.per_point.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t own = static_cast<std::size_t>(labels[i]);
        double s = 0.0;
        if (sizes[own] > 1) {
            const double a = sums(i, own) / static_cast<double>(sizes[own] - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                if (c == own || sizes[c] == 0) continue;
                b = std::min(b, sums(i, c) / static_cast<double>(sizes[c]));
            }
            const double denom = std::max(a, b);
            s = denom > 0.0 ? (b - a) / denom : 0.0;
        }
        result.per_point[i] = s;
        total += s;
    }
    result.mean = total / static_cast<double>(n);
    return result;
}

SelectionReport sweep_k(const SimilarityMatrix& S, const SweepConfig& config) {
    const LaplacianMatrix lap = laplacian(S, config.variant);
    return sweep_k(eigendecompose_symmetric(lap.L), config);
}

SelectionReport sweep_k(const EigenSystem& eigen, const SweepConfig& config) {
    const std::size_t n = eigen.eigenvectors.rows();
    if (n < 3 || config.k_min < 2 || config.k_min > config.k_max || config.k_max > n - 1) {
        throw RangeInvalidError("sweep range [" + std::to_string(config.k_min) + ", " +
                                std::to_string(config.k_max) + "] invalid for n = " +
                                std::to_string(n));
    }
    if (config.space == SilhouetteSpace::kFeatures && config.features == nullptr) {
        throw ConfigError("feature-space silhouette requested without a feature matrix");
    }

    SelectionReport report;
    report.eigenvalues = eigen.eigenvalues;
    report.gaps = eigen_gaps(eigen.eigenvalues);
    report.chosen_k = optimal_k_eigengap(report.gaps, config.k_min, config.k_max);
    report.silhouette_space = config.space;

    for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
        const SpectralEmbedding embedding = embed(eigen, k, config.row_normalize);
        KMeansParams params = config.kmeans;
        params.k = k;
        const ClusteringResult clustering = kmeans(embedding.U, params);
        const Matrix& space = config.space == SilhouetteSpace::kEmbedding
                                  ? embedding.U
                                  : *config.features;
        report.silhouette_by_k[k] = silhouette(space, clustering.labels).mean;
    }
    return report;
}

}  // namespace speccl
