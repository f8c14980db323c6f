#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace swl {

/// Asset return time series: rows are observations, columns are assets.
struct ReturnsMatrix {
    std::size_t t_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> values;       // row-major, t_rows * n_cols
    std::vector<std::string> labels;  // column header
    bool wide = false;                // flagged when n_cols > t_rows

    double at(std::size_t r, std::size_t c) const { return values[r * n_cols + c]; }
};

/// Parses a CSV with a header row of asset labels and a numeric body.
/// Any non-finite or unparsable cell raises an error naming row and column.
ReturnsMatrix load_returns_csv(const std::string& path);

/// Eigenvalues of the correlation-style covariance C = (1/T) X^T X after
/// standardizing every column to zero mean and unit variance (population
/// convention, so trace C = n exactly). Ascending, rescaled to unit mean.
std::vector<double> covariance_spectrum(const ReturnsMatrix& data);

/// Pooled spectra of per-window covariances: columns are standardized once
/// over the whole series, then each consecutive block of window_rows rows
/// contributes the eigenvalues of its own (1/W) X_w^T X_w. The pooled set is
/// rescaled to unit mean. Window-local scale fluctuations survive this
/// pipeline, unlike per-window standardization which would absorb them.
std::vector<double> pooled_window_spectrum(const ReturnsMatrix& data, int window_rows);

struct TrimSplit {
    std::vector<double> kept;     // ascending, rescaled to unit mean
    std::vector<double> removed;  // the k largest, descending
};

/// Removes the k largest eigenvalues and re-normalizes the rest.
TrimSplit trim_top(const std::vector<double>& eigenvalues, int k);

enum class FitFamily { MP, InvChi2, Chi2MC };

struct FitResult {
    FitFamily family = FitFamily::MP;
    std::optional<double> gamma_hat;  // absent for MP
    double c = 0.0;
    double objective = 0.0;  // mean squared density error
    int trimmed = 0;
    std::vector<double> fit_x;
    std::vector<double> fit_y;
};

struct FitOptions {
    int bins = 60;
    std::uint64_t seed = 0;
    int mc_samples = 150;  // Chi2MC branch: draws per grid point
    int mc_n = 40;         // Chi2MC branch: matrix shape, m derived from c
};

/// Least-squares fit of the histogram density of the (unit-mean normalized)
/// eigenvalues. MP evaluates the fixed curve; InvChi2 minimizes over gamma
/// by golden-section on log gamma in [log 0.1, log 1e3] after a 20-point
/// coarse grid; Chi2MC compares against Monte Carlo density estimates on the
/// same grid (grid-only, no refinement).
FitResult fit_gamma(const std::vector<double>& eigenvalues, double c, FitFamily family,
                    const FitOptions& options = {});

/// The fit objective at a fixed gamma; exposed for search-correctness checks.
double fit_objective(const std::vector<double>& eigenvalues, double c, double gamma,
                     int bins = 60);

std::string fit_to_json(const FitResult& result);

/// Synthetic generator: `windows` blocks of window_rows observations, each
/// block with its own inverse-chi^2 mixing variable xi_b and i.i.d. entries
/// N(0, 1/(2 gamma xi_b)).
void write_synthetic_returns_csv(const std::string& path, int n_cols, int window_rows,
                                 int windows, double gamma, std::uint64_t seed);

}  // namespace swl
