#include "swl/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swl {

TridiagonalMatrix tridiagonalize(const SymmetricMatrix& a) {
    const std::size_t n = a.dimension();
    if (n == 0) throw std::domain_error("tridiagonalize: empty matrix");
    // Work on a full square copy.
    std::vector<double> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i * n + j] = a.at(i, j);
    auto A = [&w, n](std::size_t i, std::size_t j) -> double& { return w[i * n + j]; };

    std::vector<double> d(n, 0.0), e(n, 0.0);
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(A(i, k));
            if (scale == 0.0) {
                e[i] = A(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                A(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
                    e[j] = g / h;
                    f += e[j] * A(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = A(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (std::size_t k = 0; k <= j; ++k)
                        A(j, k) -= f * e[k] + g * A(i, k);
                }
            }
        } else {
            e[i] = A(i, l);
        }
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = A(i, i);

    TridiagonalMatrix t;
    t.diagonal = std::move(d);
    t.off_diagonal.assign(e.begin() + 1, e.end());
    return t;
}

std::vector<double> eigenvalues_tridiag(const TridiagonalMatrix& t, double tol) {
    const std::size_t n = t.diagonal.size();
    if (n == 0) throw std::domain_error("eigenvalues_tridiag: empty matrix");
    if (t.off_diagonal.size() + 1 != n)
        throw std::domain_error("eigenvalues_tridiag: off-diagonal length must be n-1");
    tol = std::max(tol, 1e-15);

    std::vector<double> d = t.diagonal;
    // e is shifted so that e[i] couples d[i] and d[i+1]; e[n-1] is workspace.
    std::vector<double> e(n, 0.0);
    std::copy(t.off_diagonal.begin(), t.off_diagonal.end(), e.begin());

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= tol * (1.0 + dd)) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error(
                        "eigenvalues_tridiag: QL failed to deflate at index " +
                        std::to_string(l));
                // Wilkinson shift.
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t ii = m; ii-- > l;) {
                    double f = s * e[ii];
                    const double b = c * e[ii];
                    r = std::hypot(f, g);
                    e[ii + 1] = r;
                    if (r == 0.0) {
                        d[ii + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[ii + 1] - p;
                    r = (d[ii] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[ii + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> eigenvalues(const SymmetricMatrix& a, double tol) {
    if (a.dimension() == 1) return {a.at(0, 0)};
    return eigenvalues_tridiag(tridiagonalize(a), tol);
}

}  // namespace swl
