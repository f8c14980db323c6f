#pragma once

#include <cstdint>

namespace swl {

/// Counter-based random stream: the output sequence is a pure function of
/// (master_seed, stream_id, counter), so any number of streams can be drawn
/// concurrently and merged deterministically regardless of scheduling.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// One N(mean, sd^2) variate (Box-Muller).
    double gaussian(double mean, double sd);

    /// One Gamma(shape, scale) variate, density ~ u^{shape-1} e^{-u/scale}.
    double gamma_variate(double shape, double scale);

    /// One chi variate with (real-valued) dof degrees of freedom.
    double chi_variate(double dof);

    /// Mixing variable of the inverse-chi^2 family:
    /// f(xi) = xi^{-gamma-2} e^{-1/xi} / Gamma(gamma+1), realized as the
    /// reciprocal of a Gamma(gamma+1, 1) variate.
    double xi_inverse_chi2(double gamma);

    /// Mixing variable of the chi^2 family: Gamma(gamma + beta*n*m/2, 1).
    double xi_chi2(double gamma, int beta, int n, int m);

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

}  // namespace swl
