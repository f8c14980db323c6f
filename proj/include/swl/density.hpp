#pragma once

#include <string>

namespace swl {

enum class DensityKind { MP, GenSquare, GenRect };

/// Tagged macroscopic spectral density, unit mass and unit mean by
/// construction. MP uses (c); GenSquare is the gamma-deformation at c = 1;
/// GenRect the gamma-deformation at c < 1.
struct DensityModel {
    DensityKind kind = DensityKind::MP;
    double gamma = 0.0;  // GenSquare / GenRect
    double c = 1.0;      // MP / GenRect

    static DensityModel mp(double c) { return {DensityKind::MP, 0.0, c}; }
    static DensityModel gen_square(double gamma) {
        return {DensityKind::GenSquare, gamma, 1.0};
    }
    static DensityModel gen_rect(double gamma, double c) {
        return {DensityKind::GenRect, gamma, c};
    }

    double operator()(double x) const;
};

/// Support endpoints; upper may be infinite.
struct SupportBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool upper_infinite = false;
};

/// (c^{-1/2} - 1)^2 and (c^{-1/2} + 1)^2.
double mp_edge_lower(double c);
double mp_edge_upper(double c);

SupportBounds support_of(const DensityModel& model);

/// Marcenko-Pastur density on [c X-, c X+]; the c = 1 branch is
/// (1/2pi) sqrt(4/x - 1) on (0, 4]. Out-of-support points evaluate to 0.
double mp_density(double x, double c);

/// gamma-deformed density at c = 1, closed form through the Tricomi
/// function, evaluated in log space.
double rho_gamma_square_closed(double x, double gamma);

/// Same density through its direct integral representation; kept as the
/// independent route for equivalence checks.
double rho_gamma_square_integral(double x, double gamma);

/// gamma-deformed Marcenko-Pastur density at c < 1.
double rho_gamma_rect(double x, double gamma, double c);

/// Fold onto the real line: theta(y) = |y| rho(y^2); unit mass, unit second
/// moment. theta(0) = 0 by the |y| convention.
double theta_map(double y, const DensityModel& rho);

/// gamma -> 0 limit of the folded density: |y| Gamma(-1/2, y^2/4) / (4 sqrt(pi)).
double theta_gamma_zero(double y);

enum class AsymptoticBranch { SmallX, LargeX };

struct AsymptoticValue {
    double value = 0.0;
    AsymptoticBranch branch = AsymptoticBranch::SmallX;
};

/// Printed small-x / large-x asymptotic of the GenSquare and GenRect models.
AsymptoticValue asymptotic_branch(double x, const DensityModel& model);

/// Small-x prefactor of the GenSquare density: rho ~ pref / sqrt(x).
double gen_square_small_x_prefactor(double gamma);

/// Small-x constant of the GenRect density: rho ~ D_gamma x^gamma.
double gen_rect_small_x_constant(double gamma, double c);

/// Exponential decay rate (gamma+1)/(c X+) of the GenRect tail.
double gen_rect_decay_rate(double gamma, double c);

}  // namespace swl
