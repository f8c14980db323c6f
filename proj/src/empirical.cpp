#include "swl/empirical.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "swl/density.hpp"
#include "swl/eigen_solver.hpp"
#include "swl/ensembles.hpp"
#include "swl/harness.hpp"
#include "swl/rng.hpp"

namespace swl {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v))
        throw std::runtime_error("csv parse error at data row " + std::to_string(row) +
                                 ", column " + std::to_string(col) + ": '" + cell + "'");
    return v;
}

/// In-place column standardization to zero mean and unit population variance.
void standardize_columns(ReturnsMatrix& data) {
    const std::size_t t = data.t_rows, n = data.n_cols;
    for (std::size_t j = 0; j < n; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < t; ++i) mean += data.values[i * n + j];
        mean /= static_cast<double>(t);
        double var = 0.0;
        for (std::size_t i = 0; i < t; ++i) {
            const double d = data.values[i * n + j] - mean;
            var += d * d;
        }
        var /= static_cast<double>(t);
        if (var < 1e-28) {
            const std::string label = j < data.labels.size() ? data.labels[j] : "";
            throw std::domain_error("zero-variance column " + std::to_string(j) +
                                    (label.empty() ? "" : " ('" + label + "')"));
        }
        const double inv_sd = 1.0 / std::sqrt(var);
        for (std::size_t i = 0; i < t; ++i)
            data.values[i * n + j] = (data.values[i * n + j] - mean) * inv_sd;
    }
}

/// Eigenvalues of (1/rows) X^T X over the row block [row0, row0+rows).
std::vector<double> block_gram_eigenvalues(const ReturnsMatrix& data, std::size_t row0,
                                           std::size_t rows) {
    const std::size_t n = data.n_cols;
    SymmetricMatrix c(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
            double s = 0.0;
            for (std::size_t i = row0; i < row0 + rows; ++i)
                s += data.values[i * n + a] * data.values[i * n + b];
            c.at(a, b) = s / static_cast<double>(rows);
        }
    }
    return eigenvalues(c);
}

// Unlike the sampler-side rescale, covariance spectra of rank-deficient data
// may contain (numerically) zero eigenvalues; only the sum must be positive.
std::vector<double> unit_mean(std::vector<double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    if (!(sum > 0.0)) throw std::domain_error("spectrum has non-positive total mass");
    const double scale = static_cast<double>(values.size()) / sum;
    for (double& v : values) v *= scale;
    return values;
}

constexpr double kLogGammaLo = -2.302585092994046;  // log 0.1
constexpr double kLogGammaHi = 6.907755278982137;   // log 1e3
constexpr int kCoarsePoints = 20;

struct FitGrid {
    Histogram hist;
    std::vector<double> centers;
};

FitGrid fit_histogram(const std::vector<double>& eigenvalues, int bins) {
    if (eigenvalues.size() < 50)
        throw std::domain_error("fit_gamma: need at least 50 eigenvalues");
    FitGrid g;
    g.hist = auto_histogram(unit_mean(eigenvalues), bins);
    int occupied = 0;
    for (auto c : g.hist.counts)
        if (c > 0) ++occupied;
    if (occupied <= 1)
        throw std::domain_error("fit_gamma: degenerate histogram (single occupied bin)");
    g.centers.resize(g.hist.counts.size());
    for (std::size_t i = 0; i < g.centers.size(); ++i)
        g.centers[i] = 0.5 * (g.hist.bin_edges[i] + g.hist.bin_edges[i + 1]);
    return g;
}

double mse_against(const FitGrid& g, const std::function<double(double)>& pdf) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.centers.size(); ++i) {
        const double d = g.hist.density[i] - pdf(g.centers[i]);
        s += d * d;
    }
    return s / static_cast<double>(g.centers.size());
}

double invchi2_objective(const FitGrid& g, double c, double log_gamma) {
    const double gamma = std::exp(log_gamma);
    return mse_against(g, [gamma, c](double x) { return rho_gamma_rect(x, gamma, c); });
}

}  // namespace

ReturnsMatrix load_returns_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    ReturnsMatrix data;
    data.labels = split_csv(line);
    data.n_cols = data.labels.size();
    if (data.n_cols == 0) throw std::runtime_error(path + ": empty header");
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        const auto cells = split_csv(line);
        if (cells.size() != data.n_cols)
            throw std::runtime_error(path + ": data row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(data.n_cols));
        for (std::size_t j = 0; j < cells.size(); ++j)
            data.values.push_back(parse_cell(cells[j], row, j));
    }
    if (row == 0) throw std::runtime_error(path + ": no data rows");
    data.t_rows = row;
    data.wide = data.n_cols > data.t_rows;
    return data;
}

std::vector<double> covariance_spectrum(const ReturnsMatrix& data) {
    if (data.n_cols < 2) throw std::domain_error("covariance_spectrum: need n >= 2 columns");
    if (data.t_rows <= data.n_cols)
        throw std::domain_error("covariance_spectrum: need t_rows > n_cols");
    ReturnsMatrix std_data = data;
    standardize_columns(std_data);
    auto eig = block_gram_eigenvalues(std_data, 0, std_data.t_rows);
    return unit_mean(std::move(eig));
}

std::vector<double> pooled_window_spectrum(const ReturnsMatrix& data, int window_rows) {
    if (data.n_cols < 2) throw std::domain_error("pooled_window_spectrum: need n >= 2");
    if (window_rows < 2 || static_cast<std::size_t>(window_rows) > data.t_rows)
        throw std::domain_error("pooled_window_spectrum: invalid window size");
    ReturnsMatrix std_data = data;
    standardize_columns(std_data);
    const std::size_t windows = data.t_rows / static_cast<std::size_t>(window_rows);
    std::vector<double> pooled;
    pooled.reserve(windows * data.n_cols);
    for (std::size_t w = 0; w < windows; ++w) {
        const auto eig = block_gram_eigenvalues(std_data, w * window_rows,
                                                static_cast<std::size_t>(window_rows));
        pooled.insert(pooled.end(), eig.begin(), eig.end());
    }
    return unit_mean(std::move(pooled));
}

TrimSplit trim_top(const std::vector<double>& eigenvalues, int k) {
    if (k < 0) throw std::domain_error("trim_top: k >= 0");
    if (static_cast<std::size_t>(k) >= eigenvalues.size())
        throw std::domain_error("trim_top: k must be below the eigenvalue count");
    std::vector<double> sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    TrimSplit split;
    split.removed.assign(sorted.end() - k, sorted.end());
    std::reverse(split.removed.begin(), split.removed.end());
    sorted.resize(sorted.size() - k);
    split.kept = unit_mean(std::move(sorted));
    return split;
}

double fit_objective(const std::vector<double>& eigenvalues, double c, double gamma,
                     int bins) {
    if (!(c > 0.0 && c < 1.0)) throw std::domain_error("fit_objective: c in (0,1)");
    if (!(gamma > 0.0)) throw std::domain_error("fit_objective: gamma > 0");
    return invchi2_objective(fit_histogram(eigenvalues, bins), c, std::log(gamma));
}

FitResult fit_gamma(const std::vector<double>& eigenvalues, double c, FitFamily family,
                    const FitOptions& options) {
    if (!(c > 0.0 && c < 1.0)) throw std::domain_error("fit_gamma: c in (0,1)");
    const FitGrid g = fit_histogram(eigenvalues, options.bins);

    FitResult result;
    result.family = family;
    result.c = c;

    auto overlay_curve = [&g](const std::function<double(double)>& pdf, FitResult& r) {
        const double hi = g.hist.bin_edges.back();
        const int points = 200;
        r.fit_x.resize(points);
        r.fit_y.resize(points);
        for (int i = 0; i < points; ++i) {
            r.fit_x[i] = hi * (i + 0.5) / points;
            r.fit_y[i] = pdf(r.fit_x[i]);
        }
    };

    if (family == FitFamily::MP) {
        result.objective = mse_against(g, [c](double x) { return mp_density(x, c); });
        overlay_curve([c](double x) { return mp_density(x, c); }, result);
        return result;
    }

    if (family == FitFamily::InvChi2) {
        // Coarse grid on log gamma, then golden-section in the best bracket.
        std::vector<double> grid(kCoarsePoints), obj(kCoarsePoints);
        int best = 0;
        for (int i = 0; i < kCoarsePoints; ++i) {
            grid[i] = kLogGammaLo +
                      (kLogGammaHi - kLogGammaLo) * i / (kCoarsePoints - 1.0);
            obj[i] = invchi2_objective(g, c, grid[i]);
            if (obj[i] < obj[best]) best = i;
        }
        double lo = grid[std::max(best - 1, 0)];
        double hi = grid[std::min(best + 1, kCoarsePoints - 1)];
        const double phi = 0.6180339887498949;
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double f1 = invchi2_objective(g, c, x1), f2 = invchi2_objective(g, c, x2);
        for (int it = 0; it < 48 && hi - lo > 1e-6; ++it) {
            if (f1 < f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = invchi2_objective(g, c, x1);
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = invchi2_objective(g, c, x2);
            }
        }
        const double log_gamma_hat = f1 < f2 ? x1 : x2;
        const double gamma_hat = std::exp(log_gamma_hat);
        result.gamma_hat = gamma_hat;
        result.objective = std::min(std::min(f1, f2), obj[best]);
        if (obj[best] < std::min(f1, f2)) result.gamma_hat = std::exp(grid[best]);
        const double gh = *result.gamma_hat;
        overlay_curve([gh, c](double x) { return rho_gamma_rect(x, gh, c); }, result);
        return result;
    }

    // Chi2MC: grid-only Monte Carlo comparison at matched (c, gamma).
    EnsembleConfig config;
    config.beta = 1;
    config.n = options.mc_n;
    config.m = std::max(options.mc_n + 1,
                        static_cast<int>(std::lround(options.mc_n / c)));
    config.family = Family::Chi2;
    double best_obj = 0.0, best_gamma = 0.0;
    std::vector<double> best_density;
    for (int i = 0; i < kCoarsePoints; ++i) {
        const double lg = kLogGammaLo +
                          (kLogGammaHi - kLogGammaLo) * i / (kCoarsePoints - 1.0);
        config.gamma = std::exp(lg);
        const auto draws = generate_samples(config, options.mc_samples,
                                            options.seed + 7919u * (i + 1));
        double grand_sum = 0.0;
        std::size_t total = 0;
        for (const auto& d : draws) {
            for (double v : d.eigenvalues) grand_sum += v;
            total += d.eigenvalues.size();
        }
        std::vector<double> pooled;
        pooled.reserve(total);
        const double scale = static_cast<double>(total) / grand_sum;
        for (const auto& d : draws)
            for (double v : d.eigenvalues) pooled.push_back(v * scale);
        const Histogram mc = make_histogram(pooled, static_cast<int>(g.centers.size()),
                                            g.hist.bin_edges.front(),
                                            g.hist.bin_edges.back());
        double s = 0.0;
        for (std::size_t b = 0; b < g.centers.size(); ++b) {
            const double d = g.hist.density[b] - mc.density[b];
            s += d * d;
        }
        s /= static_cast<double>(g.centers.size());
        if (i == 0 || s < best_obj) {
            best_obj = s;
            best_gamma = config.gamma;
            best_density = mc.density;
        }
    }
    result.gamma_hat = best_gamma;
    result.objective = best_obj;
    result.fit_x = g.centers;
    result.fit_y = best_density;
    return result;
}

std::string fit_to_json(const FitResult& result) {
    nlohmann::json j;
    switch (result.family) {
        case FitFamily::MP: j["family"] = "mp"; break;
        case FitFamily::InvChi2: j["family"] = "invchi2"; break;
        case FitFamily::Chi2MC: j["family"] = "chi2mc"; break;
    }
    if (result.gamma_hat)
        j["gamma_hat"] = *result.gamma_hat;
    else
        j["gamma_hat"] = nullptr;
    j["c"] = result.c;
    j["objective"] = result.objective;
    j["trimmed"] = result.trimmed;
    j["fit_x"] = result.fit_x;
    j["fit_y"] = result.fit_y;
    return j.dump(2) + "\n";
}

void write_synthetic_returns_csv(const std::string& path, int n_cols, int window_rows,
                                 int windows, double gamma, std::uint64_t seed) {
    if (n_cols < 2 || window_rows < 2 || windows < 1)
        throw std::domain_error("write_synthetic_returns_csv: invalid shape");
    if (!(gamma > 0.0))
        throw std::domain_error("write_synthetic_returns_csv: gamma > 0");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (int j = 0; j < n_cols; ++j) out << (j ? ",a" : "a") << j;
    out << "\n";
    out.precision(9);
    for (int w = 0; w < windows; ++w) {
        RandomStream stream(seed, static_cast<std::uint64_t>(w));
        const double xi = stream.xi_inverse_chi2(gamma);
        const double sd = 1.0 / std::sqrt(2.0 * gamma * xi);
        for (int r = 0; r < window_rows; ++r) {
            for (int j = 0; j < n_cols; ++j) {
                if (j) out << ',';
                out << stream.gaussian(0.0, sd);
            }
            out << "\n";
        }
    }
}

}  // namespace swl
