#include "speccl/matrix.hpp"

#include <cmath>

namespace speccl {

double squared_row_distance(const Matrix& a, std::size_t i, const Matrix& b, std::size_t j) {
    const double* pa = a.row_ptr(i);
    const double* pb = b.row_ptr(j);
    double sum = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        const double d = pa[c] - pb[c];
        sum += d * d;
    }
    return sum;
}

double row_distance(const Matrix& a, std::size_t i, const Matrix& b, std::size_t j) {
    return std::sqrt(squared_row_distance(a, i, b, j));
}

}  // namespace speccl
