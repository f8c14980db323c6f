#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "swl/eigen_solver.hpp"
#include "swl/ensembles.hpp"
#include "swl/rng.hpp"

using namespace swl;

namespace {

// Characteristic polynomial coefficients by Faddeev-LeVerrier; independent of
// the solver under test. p(l) = l^n + c[1] l^{n-1} + ... + c[n].
std::vector<double> char_poly(const SymmetricMatrix& a) {
    const std::size_t n = a.dimension();
    std::vector<double> m(n * n, 0.0), next(n * n);
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    // M_0 = 0; M_k = A M_{k-1} + c_{k-1} I; c_k = -(1/k) tr(A M_k)
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = (i == j) ? c[k - 1] : 0.0;
                for (std::size_t l = 0; l < n; ++l) s += a.at(i, l) * m[l * n + j];
                next[i * n + j] = s;
            }
        m = next;
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += a.at(i, l) * m[l * n + i];
        c[k] = -tr / static_cast<double>(k);
    }
    return c;
}

double eval_poly(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (double coeff : c) v = v * x + coeff;
    return v;
}

// All real roots of the characteristic polynomial of a symmetric matrix by
// sign-change bisection over the Gershgorin interval.
std::vector<double> roots_by_bisection(const SymmetricMatrix& a) {
    const std::size_t n = a.dimension();
    const auto c = char_poly(a);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) radius += std::abs(a.at(i, j));
        lo = std::min(lo, a.at(i, i) - radius);
        hi = std::max(hi, a.at(i, i) + radius);
    }
    lo -= 1.0;
    hi += 1.0;
    const int cells = 200000;
    std::vector<double> roots;
    double prev_x = lo, prev_v = eval_poly(c, lo);
    for (int i = 1; i <= cells; ++i) {
        const double x = lo + (hi - lo) * i / cells;
        const double v = eval_poly(c, x);
        if ((prev_v < 0.0) != (v < 0.0)) {
            double xl = prev_x, xr = x, vl = prev_v;
            for (int it = 0; it < 100; ++it) {
                const double xm = 0.5 * (xl + xr);
                const double vm = eval_poly(c, xm);
                if ((vl < 0.0) != (vm < 0.0))
                    xr = xm;
                else
                    xl = xm, vl = vm;
            }
            roots.push_back(0.5 * (xl + xr));
        }
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

SymmetricMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
    RandomStream stream(seed, 0);
    SymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a.at(i, j) = stream.gaussian(0.0, 1.0);
    return a;
}

}  // namespace

TEST_CASE("2x2 tridiagonalization is the identity map") {
    SymmetricMatrix a(2);
    a.at(0, 0) = 2.0;
    a.at(1, 1) = 2.0;
    a.at(1, 0) = 1.0;
    const auto t = tridiagonalize(a);
    CHECK(t.diagonal[0] == doctest::Approx(2.0));
    CHECK(t.diagonal[1] == doctest::Approx(2.0));
    CHECK(std::abs(t.off_diagonal[0]) == doctest::Approx(1.0));
    const auto ev = eigenvalues(a);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("already-tridiagonal input is preserved up to off-diagonal signs") {
    SymmetricMatrix a(4);
    const double diag[4] = {1.0, -2.0, 0.5, 3.0};
    const double off[3] = {0.7, -1.1, 2.0};
    for (int i = 0; i < 4; ++i) a.at(i, i) = diag[i];
    for (int i = 0; i < 3; ++i) a.at(i + 1, i) = off[i];
    const auto t = tridiagonalize(a);
    for (int i = 0; i < 4; ++i) CHECK(t.diagonal[i] == doctest::Approx(diag[i]));
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(t.off_diagonal[i]) == doctest::Approx(std::abs(off[i])));
}

TEST_CASE("random 6x6 eigenvalues match the characteristic-polynomial roots") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const auto a = random_symmetric(6, seed);
        const auto ev = eigenvalues(a);
        const auto roots = roots_by_bisection(a);
        REQUIRE(roots.size() == 6);
        for (int i = 0; i < 6; ++i) CHECK(std::abs(ev[i] - roots[i]) < 1e-10);
    }
}

TEST_CASE("tridiagonal solver on trivial inputs") {
    TridiagonalMatrix diag_only{{3.0, -1.0, 2.0}, {0.0, 0.0}};
    const auto ev = eigenvalues_tridiag(diag_only);
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(2.0));
    CHECK(ev[2] == doctest::Approx(3.0));

    TridiagonalMatrix t{{2.0, 2.0}, {1.0}};
    const auto ev2 = eigenvalues_tridiag(t);
    CHECK(ev2[0] == doctest::Approx(1.0));
    CHECK(ev2[1] == doctest::Approx(3.0));
}

TEST_CASE("B B^T tridiagonal matrices are positive definite") {
    RandomStream stream(21, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto t = sample_laguerre_tridiag(stream, 1.0, 8, 12);
        for (double ev : eigenvalues_tridiag(t)) CHECK(ev > 0.0);
    }
}

TEST_CASE("trace and Frobenius norm preservation") {
    const auto a = random_symmetric(12, 99);
    const auto ev = eigenvalues(a);
    double trace = 0.0, frob2 = 0.0;
    for (int i = 0; i < 12; ++i) {
        trace += a.at(i, i);
        for (int j = 0; j < 12; ++j) frob2 += a.at(i, j) * a.at(i, j);
    }
    double sum = 0.0, sum2 = 0.0;
    for (double l : ev) {
        sum += l;
        sum2 += l * l;
    }
    CHECK(sum == doctest::Approx(trace).epsilon(1e-9));
    CHECK(sum2 == doctest::Approx(frob2).epsilon(1e-9));
}
