#include "speccl/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "speccl/errors.hpp"

namespace speccl {

SimilarityMatrix gaussian_similarity(const Matrix& X, double sigma) {
    if (!(sigma > 0.0)) {
        throw NonPositiveSigmaError("kernel bandwidth must be positive, got " +
                                    std::to_string(sigma));
    }
    const std::size_t n = X.rows();
    if (n < 2) throw TooFewRowsError("similarity needs at least 2 rows, got " + std::to_string(n));

    SimilarityMatrix result;
    result.sigma = sigma;
    result.S = Matrix(n, n);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = 0; i < n; ++i) {
        result.S(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = std::exp(-squared_row_distance(X, i, X, j) * inv);
            if (s < std::numeric_limits<double>::min()) s = 0.0;  // flush subnormals
            result.S(i, j) = s;
            result.S(j, i) = s;
        }
    }
    return result;
}

double median_heuristic_sigma(const Matrix& X) {
    const std::size_t n = X.rows();
    if (n < 2) throw TooFewRowsError("median heuristic needs at least 2 rows");

    std::vector<double> distances;
    distances.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            distances.push_back(row_distance(X, i, X, j));
        }
    }
    std::sort(distances.begin(), distances.end());
    const std::size_t m = distances.size();
    const double median =
        (m % 2 == 1) ? distances[m / 2] : 0.5 * (distances[m / 2 - 1] + distances[m / 2]);
    if (!(median > 0.0)) {
        throw DegenerateDataError("median pairwise distance is zero; no usable bandwidth");
    }
    return median;
}

SimilarityMatrix knn_sparsify(const SimilarityMatrix& S, std::size_t k) {
    const std::size_t n = S.size();
    if (k < 1 || k > n - 1) {
        throw KOutOfRangeError("neighbor count must be in [1, n-1], got " + std::to_string(k));
    }

    // rank neighbors of each row by similarity, ties broken by lower index
    std::vector<std::vector<bool>> keep(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> order;
        order.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) order.push_back(j);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return S.S(i, a) > S.S(i, b);
        });
        for (std::size_t r = 0; r < k; ++r) keep[i][order[r]] = true;
    }

    SimilarityMatrix result;
    result.sigma = S.sigma;
    result.sparsified_k = k;
    result.S = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        result.S(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = (keep[i][j] || keep[j][i]) ? S.S(i, j) : 0.0;
            result.S(i, j) = v;
            result.S(j, i) = v;
        }
    }
    return result;
}

}  // namespace speccl
