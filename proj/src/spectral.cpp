#include "speccl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "speccl/errors.hpp"

namespace speccl {

std::string to_string(LaplacianVariant variant) {
    return variant == LaplacianVariant::kUnnormalized ? "unnormalized" : "symmetric-normalized";
}

std::vector<double> degree_matrix(const SimilarityMatrix& S) {
    const std::size_t n = S.size();
    std::vector<double> degrees(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += S.S(i, j);
        degrees[i] = sum;
    }
    return degrees;
}

LaplacianMatrix laplacian(const SimilarityMatrix& S, LaplacianVariant variant) {
    const std::size_t n = S.size();
    LaplacianMatrix result;
    result.variant = variant;
    result.degrees = degree_matrix(S);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(result.degrees[i] > 0.0)) {
            throw ZeroDegreeError("degree of row " + std::to_string(i) +
                                  " is not positive; similarity diagonal must be 1");
        }
    }

    result.L = Matrix(n, n);
    if (variant == LaplacianVariant::kUnnormalized) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double v = (i == j) ? result.degrees[i] - S.S(i, i) : -S.S(i, j);
                result.L(i, j) = v;
                result.L(j, i) = v;
            }
        }
    } else {
        std::vector<double> inv_sqrt(n);
        for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(result.degrees[i]);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double a = inv_sqrt[i] * S.S(i, j) * inv_sqrt[j];
                const double v = (i == j) ? 1.0 - a : -a;
                result.L(i, j) = v;
                result.L(j, i) = v;
            }
        }
    }
    return result;
}

namespace {

double frobenius_norm(const Matrix& m) {
    double sum = 0.0;
    for (double v : m.data()) sum += v * v;
    return std::sqrt(sum);
}

double offdiagonal_frobenius(const Matrix& m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            sum += 2.0 * m(i, j) * m(i, j);
        }
    }
    return std::sqrt(sum);
}

// One Jacobi rotation zeroing A(p, q); accumulates the rotation into V.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t;
    if (theta >= 0.0) {
        t = 1.0 / (theta + std::sqrt(theta * theta + 1.0));
    } else {
        t = -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    const std::size_t n = a.rows();
    const double app = a(p, p);
    const double aqq = a(q, q);
    a(p, p) = app - t * apq;
    a(q, q) = aqq + t * apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        const double aip = a(i, p);
        const double aiq = a(i, q);
        a(i, p) = aip - s * (aiq + tau * aip);
        a(p, i) = a(i, p);
        a(i, q) = aiq + s * (aip - tau * aiq);
        a(q, i) = a(i, q);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double vip = v(i, p);
        const double viq = v(i, q);
        v(i, p) = vip - s * (viq + tau * vip);
        v(i, q) = viq + s * (vip - tau * viq);
    }
}

}  // namespace

EigenSystem eigendecompose_symmetric(const Matrix& L) {
    const std::size_t n = L.rows();
    if (n != L.cols()) throw NotSymmetricError("matrix is not square");
    double max_asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            max_asym = std::max(max_asym, std::abs(L(i, j) - L(j, i)));
        }
    }
    if (max_asym > 1e-10) {
        throw NotSymmetricError("matrix asymmetry " + std::to_string(max_asym) +
                                " exceeds 1e-10");
    }

    // work on the exactly symmetrized copy
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = L(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (L(i, j) + L(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    Matrix v = Matrix::identity(n);

    const double threshold = 1e-12 * frobenius_norm(a);
    constexpr int kMaxSweeps = 100;
    double off = offdiagonal_frobenius(a);
    int sweep = 0;
    while (off > threshold && sweep < kMaxSweeps) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
        off = offdiagonal_frobenius(a);
        ++sweep;
    }
    if (off > threshold) {
        throw NoConvergenceError("Jacobi sweeps exhausted; off-diagonal residual " +
                                 std::to_string(off));
    }

    // ascending eigenvalues, stable under ties
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    EigenSystem result;
    result.eigenvalues.resize(n);
    result.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        result.eigenvalues[j] = a(src, src);
        // sign convention: largest-magnitude component positive, first on ties
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(v(i, src));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            result.eigenvectors(i, j) = sign * v(i, src);
        }
    }
    return result;
}

SpectralEmbedding embed(const EigenSystem& eigen, std::size_t k, bool row_normalize) {
    const std::size_t n = eigen.eigenvectors.rows();
    if (k < 1 || k > n) {
        throw KOutOfRangeError("embedding dimension must be in [1, n], got " + std::to_string(k));
    }
    SpectralEmbedding embedding;
    embedding.row_normalized = row_normalize;
    embedding.U = Matrix(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            embedding.U(i, j) = eigen.eigenvectors(i, j);
        }
    }
    if (row_normalize) {
        for (std::size_t i = 0; i < n; ++i) {
            double norm = 0.0;
            for (std::size_t j = 0; j < k; ++j) norm += embedding.U(i, j) * embedding.U(i, j);
            norm = std::sqrt(norm);
            if (norm > 0.0) {
                for (std::size_t j = 0; j < k; ++j) embedding.U(i, j) /= norm;
            }
        }
    }
    return embedding;
}

}  // namespace speccl
