#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace swl {

/// Integration domain: [lower, upper] or [lower, inf).
struct Domain {
    double lower = 0.0;
    double upper = 1.0;
    bool upper_infinite = false;

    static Domain finite(double a, double b) { return {a, b, false}; }
    static Domain semi_infinite(double a) { return {a, 0.0, true}; }
};

struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    int max_subdivisions = 4000;
    Domain domain = Domain::finite(0.0, 1.0);
    // Integrand behaves like (x - lower)^p near the lower endpoint with
    // p > -1; a non-zero hint triggers the regularizing substitution
    // x = lower + u^{1/(p+1)}.
    double lower_singularity_exponent = 0.0;
};

/// Thrown when the subdivision budget is exhausted; carries the best
/// estimate and its error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double estimate, double error_bound, const std::string& what)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod 15(7) integration over spec.domain.
QuadratureResult integrate_full(const std::function<double(double)>& f,
                                const QuadratureSpec& spec);

/// Convenience wrapper returning just the value.
double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec);

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10);
double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double rel_tol = 1e-10);

/// log of \int_{-inf}^{inf} exp(phi(u)) du for a log-integrand with a single
/// dominant peak near u_guess. The peak is located numerically, the peak
/// value factored out, and the remainder integrated adaptively. Keeps
/// results finite for integrals whose magnitude over/underflows a double.
double log_integral_exp(const std::function<double(double)>& phi, double u_guess,
                        double rel_tol = 1e-10);

/// Same idea on a finite interval [a, b]: returns log of \int_a^b exp(phi).
double log_integral_exp_finite(const std::function<double(double)>& phi, double a,
                               double b, double rel_tol = 1e-10);

}  // namespace swl
