// End-to-end acceptance suite. Each check prints one PASS/FAIL line; the
// process exits nonzero when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "swl/density.hpp"
#include "swl/empirical.hpp"
#include "swl/ensembles.hpp"
#include "swl/harness.hpp"
#include "swl/quadrature.hpp"
#include "swl/spacing.hpp"
#include "swl/specfun.hpp"

using namespace swl;

namespace {

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail,
            double seconds) {
    std::printf("[%s] %2d %-34s %s (%.1fs)\n", ok ? "pass" : "FAIL", index, name,
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename Fn>
void run_check(int index, const char* name, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(index, name, ok, detail, seconds);
}

double mass_of(const DensityModel& model) {
    QuadratureSpec spec;
    spec.domain = Domain::semi_infinite(0.0);
    spec.relative_tolerance = 1e-10;
    if (model.kind != DensityKind::GenRect) spec.lower_singularity_exponent = -0.5;
    return integrate([&model](double x) { return model(x); }, spec);
}

double mean_of(const DensityModel& model) {
    QuadratureSpec spec;
    spec.domain = Domain::semi_infinite(0.0);
    spec.relative_tolerance = 1e-10;
    return integrate([&model](double x) { return x * model(x); }, spec);
}

// x with F(x) = p, by bisection over [lo, hi].
double quantile(const CumulativeDistribution& cdf, double p, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

EnsembleConfig make_config(int beta, int n, int m, double gamma, Family family) {
    EnsembleConfig config;
    config.beta = beta;
    config.n = n;
    config.m = m;
    config.gamma = gamma;
    config.family = family;
    return config;
}

std::vector<double> pooled_eigenvalues(const std::vector<SpectralSample>& samples) {
    std::vector<double> out;
    for (const auto& s : samples)
        out.insert(out.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    return out;
}

char buffer[256];

std::string fmt(const char* format, auto... args) {
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

}  // namespace

int main() {
    run_check(1, "density normalization", [](std::string& detail) {
        double worst = 0.0;
        for (double gamma : {0.5, 2.0, 10.0}) {
            for (double c : {1.0, 0.4}) {
                const auto model = c == 1.0 ? DensityModel::gen_square(gamma)
                                            : DensityModel::gen_rect(gamma, c);
                worst = std::max(worst, std::abs(mass_of(model) - 1.0));
                worst = std::max(worst, std::abs(mean_of(model) - 1.0));
            }
        }
        detail = fmt("max |moment - 1| = %.2e (tol 1e-6)", worst);
        return worst <= 1e-6;
    });

    run_check(2, "closed form vs integral form", [](std::string& detail) {
        double worst = 0.0;
        const int points = 200;
        const double lo = std::log(1e-3), hi = std::log(40.0);
        for (double gamma : {0.5, 2.0, 10.0}) {
            for (int i = 0; i < points; ++i) {
                const double x = std::exp(lo + (hi - lo) * i / (points - 1));
                const double a = rho_gamma_square_closed(x, gamma);
                const double b = rho_gamma_square_integral(x, gamma);
                worst = std::max(worst, std::abs(a - b) / std::abs(b));
            }
        }
        detail = fmt("max relative gap = %.2e (tol 1e-8)", worst);
        return worst <= 1e-8;
    });

    run_check(3, "large-gamma limit", [](std::string& detail) {
        bool ok = true;
        double final_sup = 0.0;
        for (double c : {1.0, 0.4}) {
            const auto limit = DensityModel::mp(c);
            const auto cdf = CumulativeDistribution::of_density(limit);
            const double lo = quantile(cdf, 0.05, 0.0, cdf.upper());
            const double hi = quantile(cdf, 0.95, 0.0, cdf.upper());
            double previous = 1e300;
            for (double gamma : {1e2, 1e3, 1e4}) {
                const auto model = c == 1.0 ? DensityModel::gen_square(gamma)
                                            : DensityModel::gen_rect(gamma, c);
                double sup = 0.0;
                for (int i = 0; i <= 200; ++i) {
                    const double x = lo + (hi - lo) * i / 200.0;
                    sup = std::max(sup, std::abs(model(x) - limit(x)));
                }
                ok = ok && sup < previous;
                previous = sup;
            }
            ok = ok && previous <= 0.01;
            final_sup = std::max(final_sup, previous);
        }
        detail = fmt("sup distance at gamma=1e4: %.4f (tol 0.01, decreasing)",
                     final_sup);
        return ok;
    });

    run_check(4, "deformed density monte carlo", [](std::string& detail) {
        bool ok = true;
        std::string parts;
        for (double gamma : {1.0, 10.0}) {
            const auto config =
                make_config(1, 10, 40, gamma, Family::InverseChi2);
            const auto r = run_density_experiment(config, 50000, 60, 401);
            ok = ok && r.ks.has_value() && *r.ks <= 0.01 &&
                 r.max_bin_deviation <= 0.02;
            parts += fmt("gamma=%g: ks=%.4f dev=%.4f  ", gamma, r.ks.value_or(-1.0),
                         r.max_bin_deviation);
        }
        detail = parts + "(tol ks 0.01, dev 0.02)";
        return ok;
    });

    run_check(5, "mean-eigenvalue law", [](std::string& detail) {
        const auto config = make_config(1, 10, 40, 2.0, Family::InverseChi2);
        const auto r = run_density_experiment(config, 10000, 40, 402);
        const double pull = std::abs(r.mean_eigenvalue - 30.0) / r.mean_sigma;
        detail = fmt("mean=%.4f expected=30 pull=%.2f sigma (tol 3)",
                     r.mean_eigenvalue, pull);
        return r.mean_expected == 30.0 && pull < 3.0;
    });

    run_check(6, "n=2 exact law and bulk surmise", [](std::string& detail) {
        const auto small = make_config(1, 2, 2, 0.0, Family::WL);
        const auto r = run_spacing_experiment(small, 2, 100000, 50, 403);
        bool ok = r.ks.has_value() && *r.ks <= 0.01;
        detail = fmt("n=2 ks=%.4f (tol 0.01)", r.ks.value_or(-1.0));

        const auto wd_cdf = CumulativeDistribution::of_spacing(SpacingModel::wd(1));
        const auto wl2_cdf =
            CumulativeDistribution::of_spacing(SpacingModel::wl2(1, 2));
        for (int n : {10, 13}) {
            const auto bulk = make_config(1, n, n, 0.0, Family::WL);
            const auto samples = generate_samples(bulk, 20000, 404 + n);
            for (int k : {5, 7, 8}) {
                const auto sp = individual_spacing(samples, k);
                const double ks_wd =
                    ks_statistic(sp, [&wd_cdf](double s) { return wd_cdf(s); });
                const double ks_wl2 =
                    ks_statistic(sp, [&wl2_cdf](double s) { return wl2_cdf(s); });
                ok = ok && ks_wd < ks_wl2;
            }
        }
        detail += "; bulk spacings prefer the surmise";
        return ok;
    });

    run_check(7, "deformed spacing monte carlo", [](std::string& detail) {
        const auto config = make_config(1, 10, 15, 7.0, Family::InverseChi2);
        const auto r = run_spacing_experiment(config, 5, 100000, 50, 405);
        bool ok = r.ks.has_value() && *r.ks <= 0.02;
        detail = fmt("ks=%.4f (tol 0.02)", r.ks.value_or(-1.0));

        // distance of the deformed law to the surmise shrinks with gamma
        const auto wd_cdf = CumulativeDistribution::of_spacing(SpacingModel::wd(1));
        double previous = 1e300;
        for (double gamma : {1.0, 7.0, 90.0}) {
            const auto gen_cdf =
                CumulativeDistribution::of_spacing(SpacingModel::gen(1, gamma));
            double sup = 0.0;
            for (double s = 0.0; s <= 6.0; s += 0.01)
                sup = std::max(sup, std::abs(gen_cdf(s) - wd_cdf(s)));
            ok = ok && sup < previous;
            previous = sup;
        }
        detail += "; curve distance to the surmise decreasing";
        return ok;
    });

    run_check(8, "large-order bessel asymptotic", [](std::string& detail) {
        const double z = 1.0;
        bool ok = true;
        double previous = 1e300;
        double final_ratio = 0.0;
        for (double gamma : {50.0, 100.0, 200.0}) {
            const double log_lhs = 0.5 * gamma * std::log(z) +
                                   log_bessel_k(gamma, 2.0 * std::sqrt(gamma * z));
            const double log_rhs = 0.5 * std::log(std::numbers::pi / 2.0) +
                                   0.5 * (gamma - 1.0) * std::log(gamma) - gamma - z;
            const double ratio = std::exp(log_lhs - log_rhs);
            ok = ok && std::abs(ratio - 1.0) < previous;
            previous = std::abs(ratio - 1.0);
            final_ratio = ratio;
        }
        detail = fmt("ratio at gamma=200: %.6f (tol 1%%)", final_ratio);
        return ok && std::abs(final_ratio - 1.0) <= 0.01;
    });

    run_check(9, "spacing-law bookkeeping", [](std::string& detail) {
        QuadratureSpec spec;
        spec.domain = Domain::semi_infinite(0.0);
        spec.relative_tolerance = 1e-12;
        double worst_wd = 0.0;
        for (int beta : {1, 2, 4}) {
            const auto model = SpacingModel::wd(beta);
            const double mass =
                integrate([&model](double s) { return model(s); }, spec);
            const double mean =
                integrate([&model](double s) { return s * model(s); }, spec);
            worst_wd = std::max({worst_wd, std::abs(mass - 1.0), std::abs(mean - 1.0)});
        }
        double worst_d = 0.0;
        for (int beta : {1, 2, 4}) {
            for (double gamma : {0.5, 7.0, 50.0}) {
                const double closed = gen_surmise_mean(beta, gamma);
                const double quad = gen_surmise_mean_by_quadrature(beta, gamma);
                worst_d = std::max(worst_d, std::abs(quad - closed) / closed);
            }
        }
        detail = fmt("wd moment gap %.1e (tol 1e-10); mean gap %.1e (tol 1e-8)",
                     worst_wd, worst_d);
        return worst_wd <= 1e-10 && worst_d <= 1e-8;
    });

    run_check(10, "dense vs tridiagonal sampler", [](std::string& detail) {
        const int reps = 10000, n = 10, m = 10;
        std::vector<double> dense, tridiag;
        dense.reserve(reps * n);
        tridiag.reserve(reps * n);
        for (int r = 0; r < reps; ++r) {
            RandomStream s1(406, static_cast<std::uint64_t>(r));
            const auto d = sample_wl_dense(s1, 1, n, m, 0.5);
            dense.insert(dense.end(), d.eigenvalues.begin(), d.eigenvalues.end());
            RandomStream s2(407, static_cast<std::uint64_t>(r));
            const auto ev = eigenvalues_tridiag(sample_laguerre_tridiag(s2, 1.0, n, m));
            tridiag.insert(tridiag.end(), ev.begin(), ev.end());
        }
        const double ks = two_sample_ks(dense, tridiag);
        detail = fmt("two-sample ks=%.4f (tol 0.01)", ks);
        return ks <= 0.01;
    });

    run_check(11, "fit recovery and scale invariance", [](std::string& detail) {
        const auto config = make_config(1, 50, 200, 2.0, Family::InverseChi2);
        const auto pooled = pooled_eigenvalues(generate_samples(config, 200, 408));
        const auto fit = fit_gamma(pooled, 0.25, FitFamily::InvChi2);
        bool ok = fit.gamma_hat.has_value() && *fit.gamma_hat >= 1.7 &&
                  *fit.gamma_hat <= 2.3;
        std::vector<double> scaled = pooled;
        for (double& v : scaled) v *= 7.0;
        const auto fit7 = fit_gamma(scaled, 0.25, FitFamily::InvChi2);
        ok = ok && fit7.gamma_hat.has_value() && *fit7.gamma_hat == *fit.gamma_hat;
        detail = fmt("gamma_hat=%.3f (target 2, window [1.7, 2.3]), 7x invariant",
                     fit.gamma_hat.value_or(-1.0));
        return ok;
    });

    if (failures == 0) {
        std::printf("all 11 acceptance checks passed\n");
        return 0;
    }
    std::printf("%d acceptance check(s) failed\n", failures);
    return 1;
}
