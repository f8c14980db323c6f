#include "swl/spacing.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "swl/quadrature.hpp"
#include "swl/specfun.hpp"

namespace swl {
namespace {

constexpr double kPi = std::numbers::pi;

void check_beta(int beta) {
    if (beta != 1 && beta != 2 && beta != 4)
        throw std::domain_error("spacing: beta must be 1, 2 or 4");
}

double wl2_nu_bar(int beta, int m) { return 0.5 * beta * (m - 1) - 1.0; }

// log of the raw (mass-normalized, not unit-mean) WL N=2 spacing law.
double wl2_log_raw(double s, int beta, int m, double n_scale, double log_c) {
    if (s <= 0.0) return -std::numeric_limits<double>::infinity();
    const double nb = wl2_nu_bar(beta, m);
    return log_c + (beta + nb + 0.5) * std::log(s) +
           log_bessel_k(0.5 + nb, n_scale * beta * s);
}

double wl2_log_norm_constant(int beta, int m, double n_scale) {
    const double nb = wl2_nu_bar(beta, m);
    // C^{-1} = 2^{-1/2+beta+nb} (n beta)^{-3/2-beta-nb}
    //                     Gamma((1+beta)/2) Gamma(1+nb+beta/2).
    return -((-0.5 + beta + nb) * std::log(2.0) +
             (-1.5 - beta - nb) * std::log(n_scale * beta) +
             std::lgamma(0.5 * (1.0 + beta)) + std::lgamma(1.0 + nb + 0.5 * beta));
}

// log of the raw folded surmise P_gamma(s).
double gen_log_raw(double s, int beta, double gamma, double log_c) {
    if (s <= 0.0) return -std::numeric_limits<double>::infinity();
    const double b = static_cast<double>(beta);
    auto phi = [b, gamma, s](double u) {
        return (b - gamma) * u - std::exp(-u) - 0.5 * b * std::exp(2.0 * u) * s * s;
    };
    // Saddle near xi ~ (beta s^2)^{-1/3} for large s.
    const double u_guess = -std::log(std::max(b * s * s, 1e-300)) / 3.0;
    return log_c + b * std::log(s) + log_integral_exp(phi, u_guess);
}

double gen_log_norm_constant(int beta, double gamma) {
    const double b = static_cast<double>(beta);
    return std::log(2.0) + 0.5 * (b + 1.0) * std::log(0.5 * b) - std::lgamma(gamma + 1.0) -
           std::lgamma(0.5 * (b + 1.0));
}

}  // namespace

SpacingModel SpacingModel::wd(int beta) {
    check_beta(beta);
    SpacingModel model;
    model.kind_ = SpacingKind::WD;
    model.beta_ = beta;
    switch (beta) {
        case 1:
            model.a_ = kPi / 2.0;
            model.b_ = kPi / 4.0;
            break;
        case 2:
            model.a_ = 32.0 / (kPi * kPi);
            model.b_ = 4.0 / kPi;
            break;
        case 4:
            model.a_ = 262144.0 / (729.0 * kPi * kPi * kPi);
            model.b_ = 64.0 / (9.0 * kPi);
            break;
    }
    model.d_ = 1.0;
    return model;
}

SpacingModel SpacingModel::wl2(int beta, int m, double n_scale) {
    check_beta(beta);
    if (m < 2) throw std::domain_error("SpacingModel::wl2: requires m >= 2");
    if (n_scale <= 0.0) throw std::domain_error("SpacingModel::wl2: n_scale > 0");
    SpacingModel model;
    model.kind_ = SpacingKind::WL2;
    model.beta_ = beta;
    model.m_ = m;
    model.n_scale_ = n_scale;
    model.log_c_ = wl2_log_norm_constant(beta, m, n_scale);
    const double log_c = model.log_c_;
    QuadratureSpec spec;
    spec.domain = Domain::semi_infinite(0.0);
    model.d_ = integrate(
        [beta, m, n_scale, log_c](double s) {
            const double lp = wl2_log_raw(s, beta, m, n_scale, log_c);
            return lp > -700.0 ? s * std::exp(lp) : 0.0;
        },
        spec);
    return model;
}

SpacingModel SpacingModel::gen(int beta, double gamma) {
    check_beta(beta);
    if (gamma <= 0.0) throw std::domain_error("SpacingModel::gen: gamma > 0");
    SpacingModel model;
    model.kind_ = SpacingKind::Gen;
    model.beta_ = beta;
    model.gamma_ = gamma;
    model.log_c_ = gen_log_norm_constant(beta, gamma);
    model.d_ = gen_surmise_mean(beta, gamma);
    return model;
}

double SpacingModel::log_density(double s) const {
    if (s < 0.0) throw std::domain_error("SpacingModel: requires s >= 0");
    switch (kind_) {
        case SpacingKind::WD:
            if (s == 0.0 && beta_ > 0) return -std::numeric_limits<double>::infinity();
            return std::log(a_) + beta_ * std::log(s) - b_ * s * s;
        case SpacingKind::WL2:
            return std::log(d_) + wl2_log_raw(s * d_, beta_, m_, n_scale_, log_c_);
        case SpacingKind::Gen:
            return std::log(d_) + gen_log_raw(s * d_, beta_, gamma_, log_c_);
    }
    throw std::logic_error("SpacingModel: unknown kind");
}

double SpacingModel::operator()(double s) const {
    if (s == 0.0) return 0.0;
    const double lp = log_density(s);
    return lp > -740.0 ? std::exp(lp) : 0.0;
}

double wd_surmise(double s, int beta) { return SpacingModel::wd(beta)(s); }

double wl2_exact_spacing(double s, int beta, int m, double n_scale) {
    return SpacingModel::wl2(beta, m, n_scale)(s);
}

double gen_surmise(double s, int beta, double gamma) {
    return SpacingModel::gen(beta, gamma)(s);
}

double gen_surmise_mean(int beta, double gamma) {
    check_beta(beta);
    if (gamma <= 0.0) throw std::domain_error("gen_surmise_mean: gamma > 0");
    const double b = static_cast<double>(beta);
    return (gamma + 1.0) * std::tgamma(0.5 * b + 1.0) /
           (std::sqrt(0.5 * b) * std::tgamma(0.5 * (b + 1.0)));
}

double gen_surmise_mean_by_quadrature(int beta, double gamma) {
    check_beta(beta);
    if (gamma <= 0.0) throw std::domain_error("gen_surmise_mean_by_quadrature: gamma > 0");
    const double log_c = gen_log_norm_constant(beta, gamma);
    QuadratureSpec spec;
    spec.domain = Domain::semi_infinite(0.0);
    return integrate(
        [beta, gamma, log_c](double s) {
            const double lp = gen_log_raw(s, beta, gamma, log_c);
            return lp > -700.0 ? s * std::exp(lp) : 0.0;
        },
        spec);
}

double gen_surmise_alpha(int beta, double gamma) {
    const double d = gen_surmise_mean(beta, gamma);
    return 1.5 * std::cbrt(beta * d * d);
}

SpacingAsymptote gen_surmise_asymptotics(double s, int beta, double gamma) {
    if (s <= 0.0) throw std::domain_error("gen_surmise_asymptotics: requires s > 0");
    const SpacingModel model = SpacingModel::gen(beta, gamma);
    const double exponent_small = std::min(static_cast<double>(beta), gamma);
    if (s < 1.0) {
        // kappa_1 anchored to the exact curve deep in the repulsion regime.
        const double s_anchor = 1e-3;
        const double kappa1 =
            std::exp(model.log_density(s_anchor) - exponent_small * std::log(s_anchor));
        return {kappa1 * std::pow(s, exponent_small), SpacingBranch::SmallS};
    }
    const double alpha = gen_surmise_alpha(beta, gamma);
    const double tail_power = (beta + 2.0 * gamma - 1.0) / 3.0;
    const double s_anchor = 20.0;
    const double log_kappa2 = model.log_density(s_anchor) -
                              tail_power * std::log(s_anchor) +
                              alpha * std::pow(s_anchor, 2.0 / 3.0);
    const double log_v =
        log_kappa2 + tail_power * std::log(s) - alpha * std::pow(s, 2.0 / 3.0);
    return {log_v > -740.0 ? std::exp(log_v) : 0.0, SpacingBranch::LargeS};
}

std::vector<double> individual_spacing(const std::vector<SpectralSample>& samples,
                                       int k) {
    if (samples.size() < 100)
        throw std::domain_error("individual_spacing: need at least 100 samples");
    const int n = static_cast<int>(samples.front().eigenvalues.size());
    if (k < 2 || k > n) throw std::domain_error("individual_spacing: k out of range");
    std::vector<double> spacings;
    spacings.reserve(samples.size());
    double sum = 0.0;
    for (const auto& sample : samples) {
        const auto& ev = sample.eigenvalues;
        if (static_cast<int>(ev.size()) != n)
            throw std::domain_error("individual_spacing: inconsistent spectrum sizes");
        const double sp = ev[k - 1] - ev[k - 2];
        spacings.push_back(sp);
        sum += sp;
    }
    const double mean = sum / static_cast<double>(spacings.size());
    if (mean <= 0.0) throw std::domain_error("individual_spacing: degenerate spacings");
    for (double& v : spacings) v /= mean;
    return spacings;
}

}  // namespace swl
