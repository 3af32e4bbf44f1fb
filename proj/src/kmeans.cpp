#include "speccl/kmeans.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "speccl/errors.hpp"

namespace speccl {

std::vector<std::size_t> kmeanspp_indices(const Matrix& points, std::size_t k, SplitMix64& rng) {
    const std::size_t n = points.rows();
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    chosen.push_back(rng.next_index(n));

    std::vector<double> min_sq(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < k) {
        const std::size_t last = chosen.back();
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = squared_row_distance(points, i, points, last);
            if (d < min_sq[i]) min_sq[i] = d;
            total += min_sq[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = rng.next_double() * total;
            double cumulative = 0.0;
            pick = n - 1;  // guards against round-off at the top end
            for (std::size_t i = 0; i < n; ++i) {
                cumulative += min_sq[i];
                if (cumulative > target) {
                    pick = i;
                    break;
                }
            }
        } else {
            // all remaining mass zero (duplicate rows): deterministic uniform draw
            pick = rng.next_index(n);
        }
        chosen.push_back(pick);
    }
    return chosen;
}

namespace {

struct LloydOutcome {
    std::vector<int> labels;
    Matrix centroids;
    double inertia = 0.0;
    std::size_t iterations = 0;
};

double assign_labels(const Matrix& points, const Matrix& centroids, std::vector<int>& labels) {
    const std::size_t n = points.rows();
    const std::size_t k = centroids.rows();
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t c = 0; c < k; ++c) {
            const double d = squared_row_distance(points, i, centroids, c);
            if (d < best) {  // strict: ties stay with the lower centroid index
                best = d;
                arg = static_cast<int>(c);
            }
        }
        labels[i] = arg;
        inertia += best;
    }
    return inertia;
}

// Repairs empty clusters by stealing the point farthest from its centroid,
// skipping points that are alone in their cluster. Lowest indices win ties.
void repair_empty_clusters(const Matrix& points, Matrix& centroids, std::vector<int>& labels) {
    const std::size_t n = points.rows();
    const std::size_t k = centroids.rows();
    std::vector<std::size_t> sizes(k, 0);
    for (int label : labels) ++sizes[static_cast<std::size_t>(label)];

    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] > 0) continue;
        double farthest = -1.0;
        std::size_t steal = n;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t owner = static_cast<std::size_t>(labels[i]);
            if (sizes[owner] <= 1) continue;
            const double d = squared_row_distance(points, i, centroids, owner);
            if (d > farthest) {
                farthest = d;
                steal = i;
            }
        }
        if (steal == n) continue;  // k > distinct points; nothing stealable
        --sizes[static_cast<std::size_t>(labels[steal])];
        labels[steal] = static_cast<int>(c);
        ++sizes[c];
        for (std::size_t j = 0; j < points.cols(); ++j) centroids(c, j) = points(steal, j);
    }
}

void recompute_centroids(const Matrix& points, const std::vector<int>& labels, Matrix& centroids) {
    const std::size_t k = centroids.rows();
    const std::size_t d = points.cols();
    std::vector<std::size_t> sizes(k, 0);
    centroids = Matrix(k, d);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const std::size_t c = static_cast<std::size_t>(labels[i]);
        ++sizes[c];
        for (std::size_t j = 0; j < d; ++j) centroids(c, j) += points(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) centroids(c, j) /= static_cast<double>(sizes[c]);
    }
}

LloydOutcome run_restart(const Matrix& points, const KMeansParams& params, std::uint64_t stream) {
    const std::size_t n = points.rows();
    const std::size_t d = points.cols();
    const std::size_t k = params.k;

    SplitMix64 rng(substream_seed(params.seed, stream));
    const std::vector<std::size_t> seeds = kmeanspp_indices(points, k, rng);

    LloydOutcome out;
    out.labels.assign(n, 0);
    out.centroids = Matrix(k, d);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < d; ++j) out.centroids(c, j) = points(seeds[c], j);
    }

    [[maybe_unused]] double previous_inertia = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
        out.inertia = assign_labels(points, out.centroids, out.labels);
        assert(out.inertia <= previous_inertia * (1.0 + 1e-12) + 1e-12);
        previous_inertia = out.inertia;

        Matrix updated = out.centroids;
        recompute_centroids(points, out.labels, updated);
        repair_empty_clusters(points, updated, out.labels);

        double movement = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double sq = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double delta = updated(c, j) - out.centroids(c, j);
                sq += delta * delta;
            }
            movement = std::max(movement, std::sqrt(sq));
        }
        out.centroids = updated;
        out.iterations = iter + 1;
        if (movement < params.tol) break;
    }
    // final consistency pass: labels against the last centroids, centroids as
    // exact means of those labels, inertia recomputed from the final pair
    assign_labels(points, out.centroids, out.labels);
    recompute_centroids(points, out.labels, out.centroids);
    repair_empty_clusters(points, out.centroids, out.labels);
    recompute_centroids(points, out.labels, out.centroids);
    out.inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.inertia += squared_row_distance(points, i, out.centroids,
                                            static_cast<std::size_t>(out.labels[i]));
    }
    return out;
}

}  // namespace

ClusteringResult kmeans(const Matrix& points, const KMeansParams& params) {
    const std::size_t n = points.rows();
    if (params.k < 1 || params.k > n) {
        throw KOutOfRangeError("cluster count must be in [1, n], got " +
                               std::to_string(params.k));
    }
    if (params.restarts < 1) throw KOutOfRangeError("restarts must be >= 1");
    if (params.tol < 0.0) throw InvalidToleranceError("tolerance must be nonnegative");

    LloydOutcome best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < params.restarts; ++r) {
        LloydOutcome candidate = run_restart(points, params, r);
        if (candidate.inertia < best.inertia) {  // strict: ties keep the earlier restart
            best = std::move(candidate);
        }
    }

    ClusteringResult result;
    result.labels = std::move(best.labels);
    result.centroids = std::move(best.centroids);
    result.inertia = best.inertia;
    result.seed = params.seed;
    result.restarts_used = params.restarts;
    result.iterations = best.iterations;
    return result;
}

}  // namespace speccl
