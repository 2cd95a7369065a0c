#include "qmc/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qmc/errors.hpp"

namespace qmc {

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::max_asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_linear: shape mismatch");

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < 1e-12)
            throw SingularSystem("solve_linear: pivot below 1e-12 at column " + std::to_string(col));
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            std::swap(b[pivot], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }

    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
        x[r] = s / a(r, r);
    }
    return x;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

std::vector<double> symmetric_eigenvalues(Matrix a, double off_tol, int max_sweeps) {
    int n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
    if (a.max_asymmetry() > 1e-9 * (1.0 + a.max_abs()))
        throw std::invalid_argument("symmetric_eigenvalues: matrix not symmetric");

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) < off_tol) {
            std::vector<double> eig(n);
            for (int i = 0; i < n; ++i) eig[i] = a(i, i);
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {  // A <- A J
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {  // A <- J' A
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    throw std::runtime_error("symmetric_eigenvalues: no convergence within sweep limit");
}

}  // namespace qmc
