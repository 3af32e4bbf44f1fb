#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "speccl/affinity.hpp"
#include "speccl/matrix.hpp"

namespace speccl {

enum class LaplacianVariant {
    kUnnormalized,         // L = D - S
    kSymmetricNormalized,  // L = I - D^{-1/2} S D^{-1/2}
};

std::string to_string(LaplacianVariant variant);

struct LaplacianMatrix {
    Matrix L;
    LaplacianVariant variant = LaplacianVariant::kSymmetricNormalized;
    std::vector<double> degrees;
};

/// Full spectrum of a symmetric matrix. eigenvalues ascending; column j of
/// eigenvectors pairs with eigenvalues[j].
struct EigenSystem {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

struct SpectralEmbedding {
    Matrix U;  // n x k, eigenvectors of the k smallest eigenvalues
    bool row_normalized = false;
};

/// Row sums of S. With a unit diagonal every degree is >= 1.
std::vector<double> degree_matrix(const SimilarityMatrix& S);

LaplacianMatrix laplacian(const SimilarityMatrix& S, LaplacianVariant variant);

/// Cyclic Jacobi sweeps on a dense symmetric matrix. Deterministic: fixed
/// rotation order, eigenvalues sorted ascending with a stable tie order, and
/// each eigenvector's largest-magnitude component made positive.
EigenSystem eigendecompose_symmetric(const Matrix& L);

/// First k eigenvector columns (smallest eigenvalues first); optionally each
/// row rescaled to unit Euclidean norm (zero rows stay zero).
SpectralEmbedding embed(const EigenSystem& eigen, std::size_t k, bool row_normalize);

}  // namespace speccl
