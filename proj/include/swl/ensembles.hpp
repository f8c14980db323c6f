#pragma once

#include <vector>

#include "swl/eigen_solver.hpp"
#include "swl/rng.hpp"

namespace swl {

enum class Family { WL, InverseChi2, Chi2 };

/// Identity of one experiment: Dyson index, matrix shape, deformation,
/// mixing family.
struct EnsembleConfig {
    int beta = 1;       // 1, 2 or 4
    int n = 2;          // columns, 2 <= n <= m
    int m = 2;          // rows
    double gamma = 0.0; // deformation; ignored for Family::WL
    Family family = Family::WL;

    double c() const { return static_cast<double>(n) / static_cast<double>(m); }
    /// Throws std::domain_error on an invalid combination.
    void validate() const;
};

/// One Monte Carlo draw: mixing variable xi (1 for plain WL) and the sorted
/// positive eigenvalues of W = X^dagger X.
struct SpectralSample {
    double xi = 1.0;
    std::vector<double> eigenvalues;
};

/// Dense Wishart-Laguerre draw at inverse-variance parameter eta: X is m x n
/// with every real component N(0, 1/(2 beta eta)). beta = 2 goes through the
/// 2x real representation of the complex matrix. beta = 4 is rejected here;
/// use the tridiagonal path.
SpectralSample sample_wl_dense(RandomStream& stream, int beta, int n, int m, double eta);

/// Dumitriu-Edelman bidiagonal model: B lower-bidiagonal with
/// d_i ~ chi_{beta(m-i+1)}, o_i ~ chi_{beta(n-i)}; returns T = B B^T, whose
/// eigenvalue jpdf is the WL one with weight e^{-lambda/2}.
TridiagonalMatrix sample_laguerre_tridiag(RandomStream& stream, double beta, int n,
                                          int m);

/// Superstatistical draw: mixes the WL sampler over the family's xi law.
SpectralSample sample_superstat(RandomStream& stream, const EnsembleConfig& config);

/// Any-family dispatch (WL included, at the e^{-lambda/2} convention).
SpectralSample sample_ensemble(RandomStream& stream, const EnsembleConfig& config);

/// lambda_j -> n * lambda_j / sum_k lambda_k; output sums to n exactly.
std::vector<double> rescale_to_unit_mean(const std::vector<double>& eigenvalues);

/// Differences of consecutive sorted eigenvalues.
std::vector<double> bare_spacings(const std::vector<double>& eigenvalues);

}  // namespace swl
