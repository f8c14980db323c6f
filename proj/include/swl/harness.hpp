#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swl/density.hpp"
#include "swl/ensembles.hpp"
#include "swl/spacing.hpp"

namespace swl {

/// Normalized histogram; density integrates to 1 when every value falls in
/// range. Values above the range land in the overflow counter.
struct Histogram {
    std::vector<double> bin_edges;         // length B+1
    std::vector<std::uint64_t> counts;     // length B
    std::vector<double> density;           // counts / (n_values * width)
    std::uint64_t n_values = 0;            // all values, overflow included
    std::uint64_t overflow = 0;
};

Histogram make_histogram(const std::vector<double>& values, int bins, double lo,
                         double hi);

/// Range [0, 99.5th percentile], overflow reported separately.
Histogram auto_histogram(const std::vector<double>& values, int bins);

/// Cached cumulative of a normalized model, built by per-cell quadrature on
/// a sqrt-transformed grid (handles the 1/sqrt(x) origin divergence).
class CumulativeDistribution {
public:
    static CumulativeDistribution of_density(const DensityModel& model);
    static CumulativeDistribution of_spacing(const SpacingModel& model);
    /// Generic construction from a pdf on [0, upper).
    static CumulativeDistribution of_pdf(const std::function<double(double)>& pdf,
                                         double upper);

    double operator()(double x) const;
    double total_mass() const;
    double upper() const { return grid_u_.empty() ? 0.0 : grid_u_.back() * grid_u_.back(); }

private:
    std::vector<double> grid_u_;  // sqrt(x) nodes
    std::vector<double> cum_;     // cumulative mass at nodes
    std::vector<double> deriv_;   // d(cum)/du at nodes, for Hermite interpolation
};

/// Two-sided Kolmogorov distance of an empirical sample to a cdf.
double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf);

struct ExperimentReport {
    EnsembleConfig config;
    std::uint64_t seed = 0;
    int samples = 0;  // R
    Histogram histogram;
    std::vector<double> theory_x;
    std::vector<double> theory_y;
    std::optional<double> ks;            // absent when no analytic overlay exists
    double chi2_per_bin = 0.0;
    double max_bin_deviation = 0.0;      // on bins with >= 100 counts
    double mean_eigenvalue = 0.0;        // grand mean of unrescaled eigenvalues
    double mean_expected = 0.0;
    double mean_sigma = 0.0;             // Monte Carlo sigma of the grand mean
    double runtime_seconds = 0.0;
};

std::string report_to_json(const ExperimentReport& report);

/// Density experiment: R spectra, eigenvalues pooled and
/// rescaled to unit grand mean, histogrammed against the matching analytic
/// density. thread_count 0 picks the hardware default; results are
/// bit-identical for any thread count.
ExperimentReport run_density_experiment(const EnsembleConfig& config, int samples,
                                        int bins, std::uint64_t seed,
                                        int thread_count = 0);

/// Individual k-th spacing experiment against the matching spacing law.
ExperimentReport run_spacing_experiment(const EnsembleConfig& config, int k,
                                        int samples, int bins, std::uint64_t seed,
                                        int thread_count = 0);

/// The analytic density matched to a config (WL -> MP, inverse-chi^2 ->
/// gamma deformation); absent for the chi^2 family.
std::optional<DensityModel> density_model_for(const EnsembleConfig& config);

/// The spacing law matched to a config (n = 2 WL -> exact N=2 law, bulk WL
/// -> WD surmise, inverse-chi^2 -> folded surmise).
std::optional<SpacingModel> spacing_model_for(const EnsembleConfig& config);

/// Raw per-sample spectra, generated deterministically in parallel with
/// stream_id = sample index.
std::vector<SpectralSample> generate_samples(const EnsembleConfig& config, int samples,
                                             std::uint64_t seed, int thread_count = 0);

}  // namespace swl
