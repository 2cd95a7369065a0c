#pragma once

#include <vector>

namespace qmc {

// Dense row-major matrix, 0-based indices. Sized for desk-scale problems
// (a few thousand unknowns at most).
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, value) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double max_abs() const;
    // largest |a(i,j) - a(j,i)| over the square part
    double max_asymmetry() const;

    bool operator==(const Matrix& o) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// Gaussian elimination with partial pivoting; throws SingularSystem when a
// pivot column collapses below 1e-12.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations, sorted
// ascending. Converged when the off-diagonal Frobenius norm drops below
// off_tol.
std::vector<double> symmetric_eigenvalues(Matrix a, double off_tol = 1e-10, int max_sweeps = 100);

}  // namespace qmc
