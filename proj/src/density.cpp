#include "swl/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swl/quadrature.hpp"
#include "swl/specfun.hpp"

namespace swl {
namespace {

constexpr double kPi = std::numbers::pi;

double log1p_exp(double u) {
    if (u > 35.0) return u + std::log1p(std::exp(-u));
    return std::log1p(std::exp(u));
}

void check_gamma(double gamma) {
    if (gamma <= 0.0) throw std::domain_error("density: requires gamma > 0");
}

void check_x(double x) {
    if (x <= 0.0) throw std::domain_error("density: requires x > 0");
}

}  // namespace

double mp_edge_lower(double c) {
    const double s = 1.0 / std::sqrt(c) - 1.0;
    return s * s;
}

double mp_edge_upper(double c) {
    const double s = 1.0 / std::sqrt(c) + 1.0;
    return s * s;
}

SupportBounds support_of(const DensityModel& model) {
    switch (model.kind) {
        case DensityKind::MP:
            return {model.c * mp_edge_lower(model.c), model.c * mp_edge_upper(model.c),
                    false};
        case DensityKind::GenSquare:
        case DensityKind::GenRect:
            return {0.0, 0.0, true};
    }
    throw std::logic_error("support_of: unknown kind");
}

double mp_density(double x, double c) {
    if (c <= 0.0 || c > 1.0) throw std::domain_error("mp_density: requires c in (0,1]");
    if (c == 1.0) {
        if (x <= 0.0 || x > 4.0) return 0.0;
        return std::sqrt(4.0 / x - 1.0) / (2.0 * kPi);
    }
    const double lo = c * mp_edge_lower(c);
    const double hi = c * mp_edge_upper(c);
    if (x <= lo || x >= hi) return 0.0;
    return std::sqrt((x - lo) * (hi - x)) / (2.0 * kPi * c * x);
}

double rho_gamma_square_closed(double x, double gamma) {
    check_x(x);
    check_gamma(gamma);
    const double g1 = gamma + 1.0;
    const double z = g1 * x / 4.0;
    const double log_rho = g1 * std::log(g1) - std::log(4.0) - 0.5 * std::log(kPi) -
                           std::lgamma(g1) - z + gamma * std::log(x / 4.0) +
                           log_tricomi_u(1.5, gamma + 1.5, z);
    return std::exp(log_rho);
}

double rho_gamma_square_integral(double x, double gamma) {
    check_x(x);
    check_gamma(gamma);
    const double g1 = gamma + 1.0;
    // \int_0^inf e^{-g1 x (t+1)/4} (t+1)^{gamma-1} sqrt(t) dt, with t = e^u.
    auto phi = [g1, gamma, x](double u) {
        return -0.25 * g1 * x * (std::exp(u) + 1.0) + (gamma - 1.0) * log1p_exp(u) +
               1.5 * u;
    };
    const double u_guess = std::log(std::max(4.0 / (g1 * x), 1e-12));
    const double log_integral = log_integral_exp(phi, u_guess);
    const double log_rho = g1 * std::log(g1) - std::log(2.0 * kPi) - std::lgamma(g1) +
                           gamma * std::log(x / 4.0) + log_integral;
    return std::exp(log_rho);
}

double rho_gamma_rect(double x, double gamma, double c) {
    check_x(x);
    check_gamma(gamma);
    if (c <= 0.0 || c >= 1.0) throw std::domain_error("rho_gamma_rect: c in (0,1)");
    const double g1 = gamma + 1.0;
    const double xm = mp_edge_lower(c);
    const double xp = mp_edge_upper(c);
    const double delta = xp - xm;
    // t = X- + delta sin^2(theta) removes the square-root endpoint
    // singularities; the sqrt factor becomes delta sin cos and dt adds
    // another 2 delta sin cos.
    auto psi = [g1, gamma, c, x, xm, delta](double theta) {
        const double s = std::sin(theta);
        const double co = std::cos(theta);
        const double t = xm + delta * s * s;
        return std::log(2.0 * delta * delta) + 2.0 * std::log(std::max(s, 1e-300)) +
               2.0 * std::log(std::max(co, 1e-300)) - (gamma + 2.0) * std::log(t) -
               x * g1 / (t * c);
    };
    const double log_integral = log_integral_exp_finite(psi, 0.0, 0.5 * kPi);
    const double log_rho = gamma * std::log(x) - std::log(2.0 * kPi) - std::lgamma(g1) +
                           g1 * (std::log(g1) - std::log(c)) + log_integral;
    return std::exp(log_rho);
}

double DensityModel::operator()(double x) const {
    switch (kind) {
        case DensityKind::MP:
            return mp_density(x, c);
        case DensityKind::GenSquare:
            return x > 0.0 ? rho_gamma_square_closed(x, gamma) : 0.0;
        case DensityKind::GenRect:
            return x > 0.0 ? rho_gamma_rect(x, gamma, c) : 0.0;
    }
    throw std::logic_error("DensityModel: unknown kind");
}

double theta_map(double y, const DensityModel& rho) {
    if (y == 0.0) return 0.0;
    return std::abs(y) * rho(y * y);
}

double theta_gamma_zero(double y) {
    if (y == 0.0) return 0.0;
    const double y2 = y * y;
    return std::abs(y) * upper_incomplete_gamma(-0.5, 0.25 * y2) /
           (4.0 * std::sqrt(kPi));
}

double gen_square_small_x_prefactor(double gamma) {
    check_gamma(gamma);
    return std::exp(0.5 * std::log(gamma + 1.0) + std::lgamma(gamma + 0.5) -
                    std::lgamma(gamma + 1.0)) /
           kPi;
}

double gen_rect_small_x_constant(double gamma, double c) {
    check_gamma(gamma);
    const double g1 = gamma + 1.0;
    const double xm = mp_edge_lower(c);
    const double xp = mp_edge_upper(c);
    const double delta = xp - xm;
    auto psi = [gamma, xm, delta](double theta) {
        const double s = std::sin(theta);
        const double co = std::cos(theta);
        const double t = xm + delta * s * s;
        return std::log(2.0 * delta * delta) + 2.0 * std::log(std::max(s, 1e-300)) +
               2.0 * std::log(std::max(co, 1e-300)) - (gamma + 2.0) * std::log(t);
    };
    const double log_integral = log_integral_exp_finite(psi, 0.0, 0.5 * kPi);
    return std::exp(-std::log(2.0 * kPi) - std::lgamma(g1) +
                    g1 * (std::log(g1) - std::log(c)) + log_integral);
}

double gen_rect_decay_rate(double gamma, double c) {
    return (gamma + 1.0) / (c * mp_edge_upper(c));
}

AsymptoticValue asymptotic_branch(double x, const DensityModel& model) {
    check_x(x);
    const double gamma = model.gamma;
    if (model.kind == DensityKind::GenSquare) {
        check_gamma(gamma);
        if (x < 1.0)
            return {gen_square_small_x_prefactor(gamma) / std::sqrt(x),
                    AsymptoticBranch::SmallX};
        const double g1 = gamma + 1.0;
        const double log_v = (gamma - 0.5) * std::log(g1) - std::log(4.0) -
                             0.5 * std::log(kPi) - std::lgamma(g1) - 0.25 * g1 * x +
                             (gamma - 1.5) * std::log(x / 4.0);
        return {std::exp(log_v), AsymptoticBranch::LargeX};
    }
    if (model.kind == DensityKind::GenRect) {
        check_gamma(gamma);
        const double c = model.c;
        if (x < 1.0)
            return {gen_rect_small_x_constant(gamma, c) * std::pow(x, gamma),
                    AsymptoticBranch::SmallX};
        const double g1 = gamma + 1.0;
        const double xm = mp_edge_lower(c);
        const double xp = mp_edge_upper(c);
        const double log_v = 0.5 * std::log(xp - xm) - std::log(4.0) -
                             0.5 * std::log(kPi) - std::lgamma(g1) -
                             (gamma - 1.0) * std::log(xp) +
                             (gamma - 0.5) * (std::log(g1) - std::log(c)) +
                             (gamma - 1.5) * std::log(x) - gen_rect_decay_rate(gamma, c) * x;
        return {std::exp(log_v), AsymptoticBranch::LargeX};
    }
    throw std::domain_error("asymptotic_branch: MP model has no asymptotic branches");
}

}  // namespace swl
