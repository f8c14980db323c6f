#include "swl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace swl {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Interval {
    double a, b;
    double value;
    double error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

Interval gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
    }
    result_kronrod *= half;
    result_gauss *= half;
    double err = std::abs(result_kronrod - result_gauss);
    return {a, b, result_kronrod, err};
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol, int max_subdivisions, double* error_out,
                int* subdivisions_out) {
    std::priority_queue<Interval> heap;
    Interval whole = gauss_kronrod_15(f, a, b);
    double total = whole.value;
    double total_err = whole.error;
    heap.push(whole);
    int used = 1;
    const double abs_floor = 1e-305;
    while (total_err > rel_tol * std::max(std::abs(total), abs_floor)) {
        if (used >= max_subdivisions) {
            if (error_out) *error_out = total_err;
            if (subdivisions_out) *subdivisions_out = used;
            throw QuadratureError(total, total_err,
                                  "quadrature failed to converge after " +
                                      std::to_string(used) + " subdivisions");
        }
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in double precision; accept it.
            total_err -= worst.error;
            worst.error = 0.0;
            heap.push(worst);
            if (heap.top().error == 0.0) break;
            continue;
        }
        Interval left = gauss_kronrod_15(f, worst.a, mid);
        Interval right = gauss_kronrod_15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    if (error_out) *error_out = total_err;
    if (subdivisions_out) *subdivisions_out = used;
    return total;
}

double safe_eval(const std::function<double(double)>& f, double x) {
    double v = f(x);
    return std::isfinite(v) ? v : 0.0;
}

}  // namespace

QuadratureResult integrate_full(const std::function<double(double)>& f,
                                const QuadratureSpec& spec) {
    if (spec.relative_tolerance <= 0.0)
        throw std::domain_error("relative_tolerance must be positive");
    if (spec.max_subdivisions < 1)
        throw std::domain_error("max_subdivisions must be at least 1");

    std::function<double(double)> g;
    double a, b;
    const double lo = spec.domain.lower;
    if (spec.domain.upper_infinite) {
        // t = lo + u/(1-u) maps (0,1) onto (lo, inf).
        g = [&f, lo](double u) {
            const double om = 1.0 - u;
            const double t = lo + u / om;
            return safe_eval(f, t) / (om * om);
        };
        a = 0.0;
        b = 1.0;
    } else if (spec.lower_singularity_exponent != 0.0) {
        const double p = spec.lower_singularity_exponent;
        if (p <= -1.0) throw std::domain_error("singularity exponent must exceed -1");
        const double q = 1.0 / (p + 1.0);
        const double len = spec.domain.upper - lo;
        // x = lo + u^q, dx = q u^{q-1} du, u in [0, len^{1/q}].
        g = [&f, lo, q](double u) {
            const double x = lo + std::pow(u, q);
            return safe_eval(f, x) * q * std::pow(u, q - 1.0);
        };
        a = 0.0;
        b = std::pow(len, 1.0 / q);
    } else {
        g = [&f](double x) { return safe_eval(f, x); };
        a = lo;
        b = spec.domain.upper;
    }

    QuadratureResult res;
    res.value = adaptive(g, a, b, spec.relative_tolerance, spec.max_subdivisions,
                         &res.error_bound, &res.subdivisions);
    return res;
}

double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    return integrate_full(f, spec).value;
}

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
    QuadratureSpec spec;
    spec.relative_tolerance = rel_tol;
    spec.domain = Domain::finite(a, b);
    return integrate(f, spec);
}

double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double rel_tol) {
    QuadratureSpec spec;
    spec.relative_tolerance = rel_tol;
    spec.domain = Domain::semi_infinite(a);
    return integrate(f, spec);
}

namespace {

// Golden-section refinement of a bracketed maximum of phi.
double refine_max(const std::function<double(double)>& phi, double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = phi(c), fd = phi(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = phi(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double log_integral_exp(const std::function<double(double)>& phi, double u_guess,
                        double rel_tol) {
    // Walk downhill-free: expand in both directions until phi decreases.
    double step = 1.0;
    double best = u_guess;
    double best_val = phi(best);
    for (int it = 0; it < 400; ++it) {
        const double left = phi(best - step);
        const double right = phi(best + step);
        if (right > best_val) {
            best += step;
            best_val = right;
            step *= 1.7;
        } else if (left > best_val) {
            best -= step;
            best_val = left;
            step *= 1.7;
        } else if (step > 1e-8) {
            step *= 0.5;
        } else {
            break;
        }
    }
    const double u_max = refine_max(phi, best - 2.0 * std::max(step, 1e-6),
                                    best + 2.0 * std::max(step, 1e-6));
    const double phi_max = phi(u_max);
    if (!std::isfinite(phi_max))
        throw std::domain_error("log_integral_exp: non-finite peak value");

    // Find cut points where the integrand has fallen by e^{-60}.
    const double drop = 60.0;
    auto cut = [&](double dir) {
        double s = 1.0;
        double u = u_max;
        while (phi(u + dir * s) > phi_max - drop && s < 1e12) s *= 2.0;
        return u + dir * s;
    };
    const double ul = cut(-1.0);
    const double ur = cut(+1.0);

    auto g = [&](double u) {
        const double v = phi(u) - phi_max;
        return v > -745.0 ? std::exp(v) : 0.0;
    };
    const double integral = integrate_finite(g, ul, ur, rel_tol);
    return phi_max + std::log(integral);
}

double log_integral_exp_finite(const std::function<double(double)>& phi, double a,
                               double b, double rel_tol) {
    // Coarse scan for the peak, then refine around it.
    const int kScan = 129;
    double phi_max = -std::numeric_limits<double>::infinity();
    double u_best = a;
    for (int i = 0; i <= kScan; ++i) {
        const double u = a + (b - a) * i / kScan;
        const double v = phi(u);
        if (v > phi_max) {
            phi_max = v;
            u_best = u;
        }
    }
    const double h = (b - a) / kScan;
    const double u_max = refine_max(phi, std::max(a, u_best - h), std::min(b, u_best + h));
    phi_max = std::max(phi_max, phi(u_max));
    if (!std::isfinite(phi_max))
        throw std::domain_error("log_integral_exp_finite: non-finite peak value");

    const double pm = phi_max;
    auto g = [&phi, pm](double u) {
        const double v = phi(u) - pm;
        return v > -745.0 ? std::exp(v) : 0.0;
    };
    // A sharp peak can slip between the nodes of a single pass over [a, b];
    // bracket it by bisecting for the e^{-60} crossings and integrate the
    // bracket and the remainders separately, with the peak on subinterval
    // endpoints.
    const double drop = 60.0;
    auto crossing = [&](double inside, double outside) {
        if (phi(outside) > pm - drop) return outside;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (inside + outside);
            (phi(mid) > pm - drop ? inside : outside) = mid;
        }
        return outside;
    };
    const double ul = crossing(u_max, a);
    const double ur = crossing(u_max, b);
    double integral = integrate_finite(g, ul, ur, rel_tol);
    // The remainders carry at most e^{-60} of the peak value; a loose pass
    // is plenty, and a non-converged estimate is still within that bound.
    auto remainder = [&g](double lo, double hi) {
        try {
            return integrate_finite(g, lo, hi, 1e-6);
        } catch (const QuadratureError& e) {
            return e.estimate();
        }
    };
    if (ul > a) integral += remainder(a, ul);
    if (ur < b) integral += remainder(ur, b);
    return phi_max + std::log(integral);
}

}  // namespace swl
