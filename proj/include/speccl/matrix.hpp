#pragma once

#include <cstddef>
#include <vector>

namespace speccl {

/// Dense row-major matrix of doubles. Sized for desk-scale problems
/// (n in the hundreds); no view/expression machinery on purpose.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

    const std::vector<double>& data() const { return data_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) {
            const double a = v < 0.0 ? -v : v;
            if (a > m) m = a;
        }
        return m;
    }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Squared Euclidean distance between row i of a and row j of b.
double squared_row_distance(const Matrix& a, std::size_t i, const Matrix& b, std::size_t j);

/// Euclidean distance between row i of a and row j of b.
double row_distance(const Matrix& a, std::size_t i, const Matrix& b, std::size_t j);

}  // namespace speccl
