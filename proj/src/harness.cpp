#include "swl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace swl {
namespace {

// 8-point Gauss-Legendre rule, used for the per-cell cdf quadrature.
constexpr double kGlX[4] = {0.1834346424956498, 0.5255324099163290,
                            0.7966664774136267, 0.9602898564975363};
constexpr double kGlW[4] = {0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

double gauss8(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
        sum += kGlW[i] * (f(c - h * kGlX[i]) + f(c + h * kGlX[i]));
    return sum * h;
}

int resolve_threads(int thread_count) {
    if (thread_count > 0) return thread_count;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string family_name(Family family) {
    switch (family) {
        case Family::WL: return "wl";
        case Family::InverseChi2: return "invchi2";
        case Family::Chi2: return "chi2";
    }
    return "?";
}

}  // namespace

Histogram make_histogram(const std::vector<double>& values, int bins, double lo,
                         double hi) {
    if (bins < 1) throw std::domain_error("make_histogram: bins >= 1");
    if (!(hi > lo)) throw std::domain_error("make_histogram: requires hi > lo");
    Histogram h;
    h.bin_edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i)
        h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
    h.counts.assign(bins, 0);
    h.n_values = values.size();
    const double width = (hi - lo) / bins;
    for (double v : values) {
        if (v < lo || v > hi) {
            ++h.overflow;
            continue;
        }
        int idx = static_cast<int>((v - lo) / width);
        if (idx == bins) idx = bins - 1;  // right edge inclusive
        ++h.counts[idx];
    }
    h.density.resize(bins);
    for (int i = 0; i < bins; ++i)
        h.density[i] =
            h.n_values ? static_cast<double>(h.counts[i]) / (h.n_values * width) : 0.0;
    return h;
}

Histogram auto_histogram(const std::vector<double>& values, int bins) {
    if (values.empty()) throw std::domain_error("auto_histogram: empty input");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t idx =
        std::min(sorted.size() - 1,
                 static_cast<std::size_t>(0.995 * static_cast<double>(sorted.size())));
    double hi = sorted[idx];
    if (hi <= 0.0) hi = sorted.back();
    if (hi <= 0.0) throw std::domain_error("auto_histogram: non-positive range");
    return make_histogram(values, bins, 0.0, hi);
}

CumulativeDistribution CumulativeDistribution::of_pdf(
    const std::function<double(double)>& pdf, double upper) {
    if (!(upper > 0.0)) throw std::domain_error("CumulativeDistribution: upper > 0");
    CumulativeDistribution cd;
    const int cells = 1600;
    const double u_max = std::sqrt(upper);
    cd.grid_u_.resize(cells + 1);
    cd.cum_.resize(cells + 1);
    cd.deriv_.resize(cells + 1);
    cd.cum_[0] = 0.0;
    auto g = [&pdf](double u) { return u > 0.0 ? 2.0 * u * pdf(u * u) : 0.0; };
    for (int i = 0; i <= cells; ++i) {
        cd.grid_u_[i] = u_max * static_cast<double>(i) / cells;
        cd.deriv_[i] = g(cd.grid_u_[i]);
    }
    for (int i = 1; i <= cells; ++i)
        cd.cum_[i] = cd.cum_[i - 1] + gauss8(g, cd.grid_u_[i - 1], cd.grid_u_[i]);
    return cd;
}

CumulativeDistribution CumulativeDistribution::of_density(const DensityModel& model) {
    const SupportBounds support = support_of(model);
    double upper;
    if (!support.upper_infinite) {
        upper = support.upper;
    } else {
        upper = 16.0;
        while (upper < 1e6 && model(upper) > 1e-14) upper *= 2.0;
    }
    return of_pdf([model](double x) { return x > 0.0 ? model(x) : 0.0; }, upper);
}

CumulativeDistribution CumulativeDistribution::of_spacing(const SpacingModel& model) {
    double upper = 8.0;
    while (upper < 1e6 && model(upper) > 1e-14) upper *= 2.0;
    return of_pdf([&model](double s) { return model(s); }, upper);
}

double CumulativeDistribution::operator()(double x) const {
    if (x <= 0.0) return 0.0;
    const double u = std::sqrt(x);
    if (u >= grid_u_.back()) return cum_.back();
    const auto it = std::upper_bound(grid_u_.begin(), grid_u_.end(), u);
    const std::size_t i = static_cast<std::size_t>(it - grid_u_.begin());
    const double u0 = grid_u_[i - 1], u1 = grid_u_[i];
    // Cubic Hermite in u using the cached pdf values as slopes.
    const double h = u1 - u0;
    const double t = (u - u0) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double f0 = cum_[i - 1], f1 = cum_[i];
    const double d0 = deriv_[i - 1], d1 = deriv_[i];
    return f0 * (2.0 * t3 - 3.0 * t2 + 1.0) + h * d0 * (t3 - 2.0 * t2 + t) +
           f1 * (-2.0 * t3 + 3.0 * t2) + h * d1 * (t3 - t2);
}

double CumulativeDistribution::total_mass() const { return cum_.back(); }

double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf) {
    if (values.size() < 2) throw std::domain_error("ks_statistic: need >= 2 values");
    std::sort(values.begin(), values.end());
    // Sampled monotonicity check of the supplied cdf.
    const int probes = 64;
    double prev = -1.0;
    for (int i = 0; i <= probes; ++i) {
        const std::size_t idx = (values.size() - 1) * i / probes;
        const double f = cdf(values[idx]);
        if (f < prev - 1e-12)
            throw std::domain_error("ks_statistic: cdf is not monotone on the data range");
        prev = f;
    }
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        d = std::max(d, std::max((i + 1) / n - f, f - i / n));
    }
    return d;
}

std::optional<DensityModel> density_model_for(const EnsembleConfig& config) {
    switch (config.family) {
        case Family::WL:
            return DensityModel::mp(config.c());
        case Family::InverseChi2:
            return config.n == config.m ? DensityModel::gen_square(config.gamma)
                                        : DensityModel::gen_rect(config.gamma, config.c());
        case Family::Chi2:
            return std::nullopt;  // analytic density out of scope
    }
    return std::nullopt;
}

std::optional<SpacingModel> spacing_model_for(const EnsembleConfig& config) {
    switch (config.family) {
        case Family::WL:
            return config.n == 2 ? SpacingModel::wl2(config.beta, config.m)
                                 : SpacingModel::wd(config.beta);
        case Family::InverseChi2:
            return SpacingModel::gen(config.beta, config.gamma);
        case Family::Chi2:
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<SpectralSample> generate_samples(const EnsembleConfig& config, int samples,
                                             std::uint64_t seed, int thread_count) {
    config.validate();
    if (samples < 1) throw std::domain_error("generate_samples: samples >= 1");
    std::vector<SpectralSample> out(samples);
    const int threads = std::min(resolve_threads(thread_count), samples);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= samples || failed.load()) return;
            try {
                RandomStream stream(seed, static_cast<std::uint64_t>(i));
                out[i] = sample_ensemble(stream, config);
            } catch (...) {
                failed.store(true);
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load())
        throw std::runtime_error("generate_samples: a sampler stream failed");
    return out;
}

namespace {

double expected_mean_eigenvalue(const EnsembleConfig& config) {
    const double m = config.m;
    switch (config.family) {
        case Family::WL:
            return config.beta == 4 ? config.beta * m : m;
        case Family::InverseChi2:
            return m * (config.gamma + 1.0) / (2.0 * config.gamma);
        case Family::Chi2:
            return m * config.gamma /
                   (2.0 * (config.gamma + 0.5 * config.beta * config.n * config.m - 1.0));
    }
    return 0.0;
}

void attach_overlay_and_metrics(ExperimentReport& report,
                                const std::vector<double>& values,
                                const std::function<double(double)>& pdf,
                                const CumulativeDistribution& cdf) {
    const Histogram& h = report.histogram;
    const int bins = static_cast<int>(h.counts.size());
    report.theory_x.resize(bins);
    report.theory_y.resize(bins);
    double max_dev = 0.0;
    double chi2 = 0.0;
    int chi2_bins = 0;
    for (int i = 0; i < bins; ++i) {
        const double center = 0.5 * (h.bin_edges[i] + h.bin_edges[i + 1]);
        const double width = h.bin_edges[i + 1] - h.bin_edges[i];
        report.theory_x[i] = center;
        report.theory_y[i] = pdf(center);
        const double bin_mass = cdf(h.bin_edges[i + 1]) - cdf(h.bin_edges[i]);
        // compare against the bin average of the law, not its midpoint value;
        // steep bins would otherwise show a pure discretization artifact
        if (h.counts[i] >= 100)
            max_dev = std::max(max_dev, std::abs(h.density[i] - bin_mass / width));
        const double expected = static_cast<double>(h.n_values) * bin_mass;
        if (expected >= 10.0) {
            const double diff = static_cast<double>(h.counts[i]) - expected;
            chi2 += diff * diff / expected;
            ++chi2_bins;
        }
    }
    report.max_bin_deviation = max_dev;
    report.chi2_per_bin = chi2_bins ? chi2 / chi2_bins : 0.0;
    report.ks = ks_statistic(values, [&cdf](double x) { return cdf(x); });
}

}  // namespace

ExperimentReport run_density_experiment(const EnsembleConfig& config, int samples,
                                        int bins, std::uint64_t seed,
                                        int thread_count) {
    if (samples < 100) throw std::domain_error("run_density_experiment: samples >= 100");
    const auto start = std::chrono::steady_clock::now();
    const auto draws = generate_samples(config, samples, seed, thread_count);

    // Grand mean over unrescaled eigenvalues; accumulation order is fixed by
    // sample index so the result is independent of thread scheduling.
    double grand_sum = 0.0;
    std::size_t total = 0;
    double mean_of_means = 0.0, m2 = 0.0;
    for (int i = 0; i < samples; ++i) {
        double s = 0.0;
        for (double v : draws[i].eigenvalues) s += v;
        grand_sum += s;
        total += draws[i].eigenvalues.size();
        const double sample_mean = s / draws[i].eigenvalues.size();
        const double delta = sample_mean - mean_of_means;
        mean_of_means += delta / (i + 1);
        m2 += delta * (sample_mean - mean_of_means);
    }
    const double grand_mean = grand_sum / static_cast<double>(total);

    // Pool all eigenvalues rescaled to unit grand mean. (The per-sample
    // rescaling would cancel the mixing variable exactly and erase the
    // gamma-dependence; the macroscopic density is defined relative to the
    // ensemble mean.)
    std::vector<double> values;
    values.reserve(total);
    for (const auto& d : draws)
        for (double v : d.eigenvalues) values.push_back(v / grand_mean);

    ExperimentReport report;
    report.config = config;
    report.seed = seed;
    report.samples = samples;
    report.mean_eigenvalue = grand_mean;
    report.mean_expected = expected_mean_eigenvalue(config);
    report.mean_sigma =
        std::sqrt(m2 / (samples - 1.0)) / std::sqrt(static_cast<double>(samples));
    report.histogram = auto_histogram(values, bins);

    if (auto model = density_model_for(config)) {
        const auto cdf = CumulativeDistribution::of_density(*model);
        attach_overlay_and_metrics(report, values,
                                   [&model](double x) { return (*model)(x); }, cdf);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ExperimentReport run_spacing_experiment(const EnsembleConfig& config, int k,
                                        int samples, int bins, std::uint64_t seed,
                                        int thread_count) {
    if (samples < 10000)
        throw std::domain_error("run_spacing_experiment: samples >= 10000");
    if (k < 2 || k > config.n)
        throw std::domain_error("run_spacing_experiment: k must be in 2..n");
    const auto start = std::chrono::steady_clock::now();
    const auto draws = generate_samples(config, samples, seed, thread_count);
    const std::vector<double> values = individual_spacing(draws, k);

    ExperimentReport report;
    report.config = config;
    report.seed = seed;
    report.samples = samples;
    report.histogram = auto_histogram(values, bins);
    if (auto model = spacing_model_for(config)) {
        const auto cdf = CumulativeDistribution::of_spacing(*model);
        attach_overlay_and_metrics(report, values,
                                   [&model](double s) { return (*model)(s); }, cdf);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string report_to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["config"] = {{"beta", report.config.beta},
                   {"n", report.config.n},
                   {"m", report.config.m},
                   {"c", report.config.c()},
                   {"family", family_name(report.config.family)}};
    if (report.config.family == Family::WL)
        j["config"]["gamma"] = nullptr;
    else
        j["config"]["gamma"] = report.config.gamma;
    j["seed"] = report.seed;
    j["R"] = report.samples;
    j["bin_edges"] = report.histogram.bin_edges;
    j["counts"] = report.histogram.counts;
    j["density"] = report.histogram.density;
    j["overflow"] = report.histogram.overflow;
    j["n_values"] = report.histogram.n_values;
    j["theory_x"] = report.theory_x;
    j["theory_y"] = report.theory_y;
    if (report.ks)
        j["ks"] = *report.ks;
    else
        j["ks"] = nullptr;
    j["chi2_per_bin"] = report.chi2_per_bin;
    j["max_bin_deviation"] = report.max_bin_deviation;
    j["mean_eigenvalue"] = report.mean_eigenvalue;
    j["mean_expected"] = report.mean_expected;
    j["mean_sigma"] = report.mean_sigma;
    j["runtime_seconds"] = report.runtime_seconds;
    return j.dump(2) + "\n";
}

}  // namespace swl
