#pragma once

#include "swl/quadrature.hpp"

namespace swl {

/// Gamma function. Throws std::domain_error at the poles (non-positive
/// integers) and std::overflow_error when the result exceeds double range
/// (use log_gamma instead).
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Upper incomplete gamma Gamma(a, x) = \int_x^inf t^{a-1} e^{-t} dt.
/// Negative non-integer a handled by upward recurrence
/// Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a.
double upper_incomplete_gamma(double a, double x);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
double regularized_lower_gamma(double a, double x);

/// Modified Bessel function of the second kind, via the integral
/// representation K_nu(x) = (x^nu / 2^{nu+1}) \int_0^inf t^{-nu-1}
/// exp[-t - x^2/(4t)] dt. Negative nu maps through K_{-nu} = K_nu.
double bessel_k(double nu, double x);

/// log K_nu(x); stays finite where K itself under- or overflows.
double log_bessel_k(double nu, double x);

/// Tricomi confluent hypergeometric Psi(a, b; z) for a > 0, z > 0, via
/// Psi = Gamma(a)^{-1} \int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt.
double tricomi_u(double a, double b, double z);

/// log Psi(a, b; z).
double log_tricomi_u(double a, double b, double z);

/// Complementary error function (thin wrapper, used by test oracles).
double erfc_fn(double x);

}  // namespace swl
