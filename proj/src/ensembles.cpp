#include "swl/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace swl {
namespace {

void check_shape(int n, int m) {
    if (n < 1 || n > m) throw std::domain_error("ensemble: requires 1 <= n <= m");
}

std::vector<double> positive_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

SpectralSample dense_real(RandomStream& stream, int n, int m, double sd) {
    std::vector<double> x(static_cast<std::size_t>(m) * n);
    for (double& e : x) e = stream.gaussian(0.0, sd);
    SymmetricMatrix w(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = 0.0;
            for (int k = 0; k < m; ++k)
                s += x[static_cast<std::size_t>(k) * n + i] *
                     x[static_cast<std::size_t>(k) * n + j];
            w.at(i, j) = s;
        }
    SpectralSample sample;
    sample.eigenvalues = positive_sorted(eigenvalues(w));
    return sample;
}

SpectralSample dense_complex(RandomStream& stream, int n, int m, double sd) {
    std::vector<std::complex<double>> x(static_cast<std::size_t>(m) * n);
    for (auto& e : x) {
        const double re = stream.gaussian(0.0, sd);
        const double im = stream.gaussian(0.0, sd);
        e = {re, im};
    }
    // W = X^dagger X, embedded as the symmetric 2n x 2n real representation
    // [[Re W, -Im W], [Im W, Re W]]; its spectrum is that of W doubled.
    std::vector<std::complex<double>> wc(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            std::complex<double> s = 0.0;
            for (int k = 0; k < m; ++k)
                s += std::conj(x[static_cast<std::size_t>(k) * n + i]) *
                     x[static_cast<std::size_t>(k) * n + j];
            wc[static_cast<std::size_t>(i) * n + j] = s;
            wc[static_cast<std::size_t>(j) * n + i] = std::conj(s);
        }
    SymmetricMatrix w2(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto v = wc[static_cast<std::size_t>(i) * n + j];
            w2.at(i, j) = v.real();
            w2.at(n + i, n + j) = v.real();
            if (n + i >= j) w2.at(n + i, j) = v.imag();
        }
    std::vector<double> doubled = positive_sorted(eigenvalues(w2));
    SpectralSample sample;
    sample.eigenvalues.reserve(n);
    for (int i = 0; i < n; ++i)
        sample.eigenvalues.push_back(0.5 * (doubled[2 * i] + doubled[2 * i + 1]));
    return sample;
}

}  // namespace

void EnsembleConfig::validate() const {
    if (beta != 1 && beta != 2 && beta != 4)
        throw std::domain_error("EnsembleConfig: beta must be 1, 2 or 4");
    if (n < 2 || n > m) throw std::domain_error("EnsembleConfig: requires 2 <= n <= m");
    if (family != Family::WL && !(gamma > 0.0))
        throw std::domain_error("EnsembleConfig: gamma must be positive");
}

SpectralSample sample_wl_dense(RandomStream& stream, int beta, int n, int m,
                               double eta) {
    if (beta == 4)
        throw std::domain_error("sample_wl_dense: beta = 4 uses the tridiagonal path");
    if (beta != 1 && beta != 2)
        throw std::domain_error("sample_wl_dense: beta must be 1 or 2");
    if (eta <= 0.0) throw std::domain_error("sample_wl_dense: requires eta > 0");
    check_shape(n, m);
    const double sd = 1.0 / std::sqrt(2.0 * beta * eta);
    return beta == 1 ? dense_real(stream, n, m, sd) : dense_complex(stream, n, m, sd);
}

TridiagonalMatrix sample_laguerre_tridiag(RandomStream& stream, double beta, int n,
                                          int m) {
    if (beta <= 0.0) throw std::domain_error("sample_laguerre_tridiag: beta > 0");
    check_shape(n, m);
    std::vector<double> d(n), o(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) d[i] = stream.chi_variate(beta * (m - i));
    for (int i = 0; i + 1 < n; ++i) o[i] = stream.chi_variate(beta * (n - 1 - i));
    TridiagonalMatrix t;
    t.diagonal.resize(n);
    t.off_diagonal.resize(std::max(n - 1, 0));
    // T = B B^T with B lower bidiagonal (diag d, subdiag o).
    for (int i = 0; i < n; ++i)
        t.diagonal[i] = d[i] * d[i] + (i > 0 ? o[i - 1] * o[i - 1] : 0.0);
    for (int i = 0; i + 1 < n; ++i) t.off_diagonal[i] = o[i] * d[i];
    return t;
}

SpectralSample sample_superstat(RandomStream& stream, const EnsembleConfig& config) {
    config.validate();
    if (config.family == Family::WL)
        throw std::domain_error("sample_superstat: use sample_wl_dense for plain WL");
    const double xi = config.family == Family::InverseChi2
                          ? stream.xi_inverse_chi2(config.gamma)
                          : stream.xi_chi2(config.gamma, config.beta, config.n, config.m);
    const double eta = config.family == Family::InverseChi2 ? config.gamma * xi
                                                            : xi / config.gamma;
    SpectralSample sample;
    if (config.beta == 4) {
        auto t = sample_laguerre_tridiag(stream, config.beta, config.n, config.m);
        sample.eigenvalues = eigenvalues_tridiag(t);
        const double scale = 1.0 / (2.0 * eta * config.beta);
        for (double& v : sample.eigenvalues) v *= scale;
    } else {
        sample = sample_wl_dense(stream, config.beta, config.n, config.m, eta);
    }
    sample.xi = xi;
    return sample;
}

SpectralSample sample_ensemble(RandomStream& stream, const EnsembleConfig& config) {
    config.validate();
    if (config.family != Family::WL) return sample_superstat(stream, config);
    if (config.beta == 4) {
        auto t = sample_laguerre_tridiag(stream, config.beta, config.n, config.m);
        SpectralSample sample;
        sample.eigenvalues = eigenvalues_tridiag(t);
        return sample;
    }
    return sample_wl_dense(stream, config.beta, config.n, config.m, 0.5);
}

std::vector<double> rescale_to_unit_mean(const std::vector<double>& eigenvalues) {
    double sum = 0.0;
    for (double v : eigenvalues) {
        if (v <= 0.0)
            throw std::domain_error("rescale_to_unit_mean: eigenvalues must be positive");
        sum += v;
    }
    if (sum <= 0.0) throw std::domain_error("rescale_to_unit_mean: zero-sum input");
    const double scale = static_cast<double>(eigenvalues.size()) / sum;
    std::vector<double> out(eigenvalues.size());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) out[i] = eigenvalues[i] * scale;
    return out;
}

std::vector<double> bare_spacings(const std::vector<double>& eigenvalues) {
    if (eigenvalues.size() < 2)
        throw std::domain_error("bare_spacings: need at least two eigenvalues");
    if (!std::is_sorted(eigenvalues.begin(), eigenvalues.end()))
        throw std::domain_error("bare_spacings: input must be sorted ascending");
    std::vector<double> out(eigenvalues.size() - 1);
    for (std::size_t i = 1; i < eigenvalues.size(); ++i)
        out[i - 1] = eigenvalues[i] - eigenvalues[i - 1];
    return out;
}

}  // namespace swl
