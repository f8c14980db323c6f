#pragma once

#include <vector>

#include "swl/ensembles.hpp"

namespace swl {

enum class SpacingKind { WD, WL2, Gen };

/// Tagged level-spacing law, normalized to unit mass and unit mean.
/// Normalization constants are computed once at construction.
class SpacingModel {
public:
    static SpacingModel wd(int beta);
    /// Exact N = 2 WL spacing at matrix shape (2, m); n_scale is the weight
    /// scale (1/2 for standard normal entries). The unit-mean rescale makes
    /// the final curve independent of n_scale.
    static SpacingModel wl2(int beta, int m, double n_scale = 0.5);
    static SpacingModel gen(int beta, double gamma);

    SpacingKind kind() const { return kind_; }
    int beta() const { return beta_; }
    double gamma() const { return gamma_; }
    /// Mean of the raw (mass-normalized) law; the rescale factor.
    double raw_mean() const { return d_; }

    /// Unit-mean normalized density at s >= 0.
    double operator()(double s) const;
    /// log of the density; finite far into the tail.
    double log_density(double s) const;

private:
    SpacingKind kind_ = SpacingKind::WD;
    int beta_ = 1;
    int m_ = 2;
    double gamma_ = 0.0;
    double n_scale_ = 0.5;
    double a_ = 0.0;      // WD
    double b_ = 0.0;      // WD
    double log_c_ = 0.0;  // WL2 / Gen log normalization constant
    double d_ = 1.0;      // raw first moment
};

/// Wigner-Dyson surmise a_beta s^beta exp(-b_beta s^2), mass and mean 1.
double wd_surmise(double s, int beta);

/// Unit-mean exact N = 2 WL spacing law.
double wl2_exact_spacing(double s, int beta, int m, double n_scale = 0.5);

/// Unit-mean gamma-deformed folded surmise.
double gen_surmise(double s, int beta, double gamma);

/// First moment of the raw folded surmise, closed form:
/// d_gamma = (gamma+1) Gamma(beta/2+1) / ((beta/2)^{1/2} Gamma((beta+1)/2)).
double gen_surmise_mean(int beta, double gamma);

/// Same moment by direct quadrature of s P_gamma(s); equivalence oracle.
double gen_surmise_mean_by_quadrature(int beta, double gamma);

/// Stretched-exponential rate alpha_gamma = (3/2)(beta d_gamma^2)^{1/3}.
double gen_surmise_alpha(int beta, double gamma);

enum class SpacingBranch { SmallS, LargeS };

struct SpacingAsymptote {
    double value = 0.0;
    SpacingBranch branch = SpacingBranch::SmallS;
};

/// Printed asymptotic shape of the unit-mean folded surmise; the
/// gamma-dependent prefactors are anchored numerically to the exact curve.
SpacingAsymptote gen_surmise_asymptotics(double s, int beta, double gamma);

/// Per-sample k-th bare spacing (1-based k in 2..n) divided by its
/// across-sample mean; the output has sample mean exactly 1.
std::vector<double> individual_spacing(const std::vector<SpectralSample>& samples,
                                       int k);

}  // namespace swl
