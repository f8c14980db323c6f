#include "swl/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swl {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer; full-period bijection on 64-bit words.
std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
    key_ = mix(mix(master_seed + kGolden) ^ (stream_id * 0xD6E8FEB86659FD93ULL + 1));
}

std::uint64_t RandomStream::next_u64() {
    counter_ += kGolden;
    return mix(key_ ^ counter_);
}

double RandomStream::uniform() {
    // 53 significant bits, shifted into the open interval.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::gaussian(double mean, double sd) {
    if (sd <= 0.0) throw std::domain_error("gaussian: requires sd > 0");
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return mean + sd * cached_gaussian_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = r * std::sin(theta);
    has_cached_gaussian_ = true;
    return mean + sd * r * std::cos(theta);
}

double RandomStream::gamma_variate(double shape, double scale) {
    if (shape <= 0.0) throw std::domain_error("gamma_variate: requires shape > 0");
    if (scale <= 0.0) throw std::domain_error("gamma_variate: requires scale > 0");
    if (shape < 1.0) {
        // Boost to shape + 1 and correct by u^{1/shape}.
        const double g = gamma_variate(shape + 1.0, 1.0);
        const double u = uniform();
        return scale * g * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = gaussian(0.0, 1.0);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

double RandomStream::chi_variate(double dof) {
    if (dof <= 0.0) throw std::domain_error("chi_variate: requires dof > 0");
    return std::sqrt(2.0 * gamma_variate(0.5 * dof, 1.0));
}

double RandomStream::xi_inverse_chi2(double gamma) {
    if (gamma <= 0.0) throw std::domain_error("xi_inverse_chi2: requires gamma > 0");
    return 1.0 / gamma_variate(gamma + 1.0, 1.0);
}

double RandomStream::xi_chi2(double gamma, int beta, int n, int m) {
    if (gamma <= 0.0) throw std::domain_error("xi_chi2: requires gamma > 0");
    if (n < 2 || n > m) throw std::domain_error("xi_chi2: requires 2 <= n <= m");
    return gamma_variate(gamma + 0.5 * beta * n * m, 1.0);
}

}  // namespace swl
