// analytics.hpp - closed-form and quadrature oracles: the lattice
// Fourier-symbol sublevel measure
//
//   ||E_r||_{1->inf} = lambda^n({ x in [-1/2,1/2]^n : sum (1 - cos 2 pi x_i) < r/2 })
//
// the homogeneous-tree spectral gap b = n - 2 sqrt(n-1), finite-ball
// truncation convergence, transformed-volume growth and log-log exponent fits.

#pragma once

#include "uncert/structures.hpp"

#include <utility>
#include <vector>

namespace uncert::oracles {

inline constexpr int kDefaultSymbolResolution = 4096;  // grid points per dimension

// n = 1 uses the closed form arccos(1 - r/2)/pi; n in {2, 3} midpoint-grid
// quadrature. n >= 4 unsupported.
double lattice_projector_measure(int dims, double r,
                                 int resolution = kDefaultSymbolResolution);

struct GridMeasure {
    double value = 0.0;
    double error_estimate = 0.0;  // |value(resolution) - value(resolution/2)|
};
// Pure midpoint-grid route for any n in {1, 2, 3}; the n = 1 case exists to
// cross-check the closed form.
GridMeasure lattice_projector_measure_grid(int dims, double r,
                                           int resolution = kDefaultSymbolResolution);

// Max over the grid of |cycle projector norm - symbol measure| / measure.
double cycle_vs_symbol_check(int side, int dims, const std::vector<double>& r_grid);

// Midpoints of consecutive distinct eigenvalue gaps inside [lo, hi],
// thinned to at most max_points; grid values avoid the spectrum.
std::vector<double> eigenvalue_gap_midpoints(const Eigen::VectorXd& eigenvalues, double lo,
                                             double hi, int max_points);

// b = n - 2 sqrt(n-1); requires n > 2.
double tree_gap(int branching_degree);

struct TreeConvergencePoint {
    int radius = 0;
    double lambda_max = 0.0;      // largest adjacency eigenvalue of the ball
    double gap_to_limit = 0.0;    // 2 sqrt(n-1) - lambda_max
};
// Validates the monotone approach lambda_max(R) -> 2 sqrt(n-1) from below.
std::vector<TreeConvergencePoint> tree_truncation_convergence(
    int branching_degree, const std::vector<int>& radii,
    int size_cap = graphs::kDefaultSizeCap);

long long tree_ball_volume_closed_form(int branching_degree, int radius);

struct AsymptoticFit {
    std::vector<std::pair<double, double>> samples;
    double fitted_exponent = 0.0;
    double residual = 0.0;
    double claimed_exponent = 0.0;
};

// Least-squares slope of log y against log x; needs >= 5 positive samples.
AsymptoticFit fit_exponent(const std::vector<std::pair<double, double>>& samples,
                           double claimed);

struct TransformedVolumeResult {
    AsymptoticFit fit;          // volume against r = (n-1)^{rho/3}, claimed exponent 3
    double max_volume_ratio = 0.0;  // sup of volume / r^3 over the tabulated range
};
TransformedVolumeResult transformed_volume_check(int branching_degree, int radius_max);

}  // namespace uncert::oracles
