#pragma once

#include <cstddef>
#include <vector>

namespace swl {

/// Dense symmetric matrix, lower-triangle storage.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t dimension)
        : n_(dimension), data_(dimension * (dimension + 1) / 2, 0.0) {}

    std::size_t dimension() const { return n_; }

    double& at(std::size_t i, std::size_t j) {
        if (j > i) std::swap(i, j);
        return data_[i * (i + 1) / 2 + j];
    }
    double at(std::size_t i, std::size_t j) const {
        if (j > i) std::swap(i, j);
        return data_[i * (i + 1) / 2 + j];
    }

private:
    std::size_t n_;
    std::vector<double> data_;
};

/// Symmetric tridiagonal matrix: diagonal of length n, off-diagonal n-1.
struct TridiagonalMatrix {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;
};

/// Householder reduction to an orthogonally similar tridiagonal matrix.
TridiagonalMatrix tridiagonalize(const SymmetricMatrix& a);

/// All eigenvalues of a symmetric tridiagonal matrix, sorted ascending,
/// by implicit-shift QL with Wilkinson shifts. Each eigenvalue converged
/// to |dl| <= tol * (1 + |l|). Throws std::runtime_error if any deflation
/// exceeds the iteration cap.
std::vector<double> eigenvalues_tridiag(const TridiagonalMatrix& t, double tol = 1e-12);

/// Eigenvalues of a dense symmetric matrix, sorted ascending.
std::vector<double> eigenvalues(const SymmetricMatrix& a, double tol = 1e-12);

}  // namespace swl
