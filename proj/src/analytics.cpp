#include "uncert/analytics.hpp"

#include "uncert/speccore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uncert::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> symbol_samples(int resolution) {
    std::vector<double> c(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double x = (i + 0.5) / resolution - 0.5;
        c[i] = 1.0 - std::cos(2.0 * kPi * x);
    }
    std::sort(c.begin(), c.end());
    return c;
}

double grid_measure_once(int dims, double r, int resolution) {
    const auto c = symbol_samples(resolution);
    const double thr = r / 2.0;
    auto count_below = [&c](double t) {
        return static_cast<long long>(std::lower_bound(c.begin(), c.end(), t) - c.begin());
    };
    long long count = 0;
    if (dims == 1) {
        count = count_below(thr);
    } else if (dims == 2) {
        for (double ci : c) {
            if (ci >= thr) break;
            count += count_below(thr - ci);
        }
    } else {
        for (double ci : c) {
            if (ci >= thr) break;
            for (double cj : c) {
                if (ci + cj >= thr) break;
                count += count_below(thr - ci - cj);
            }
        }
    }
    return static_cast<double>(count) / std::pow(static_cast<double>(resolution), dims);
}

}  // namespace

double lattice_projector_measure(int dims, double r, int resolution) {
    if (dims < 1 || dims > 3)
        throw std::invalid_argument("lattice_projector_measure: dims must be 1, 2 or 3");
    if (r <= 0.0) return 0.0;
    if (r >= 4.0 * dims) return 1.0;
    if (dims == 1) {
        const double v = std::acos(1.0 - r / 2.0) / kPi;
        return std::clamp(v, 0.0, 1.0);
    }
    return lattice_projector_measure_grid(dims, r, resolution).value;
}

GridMeasure lattice_projector_measure_grid(int dims, double r, int resolution) {
    if (dims < 1 || dims > 3)
        throw std::invalid_argument("lattice_projector_measure_grid: dims must be 1, 2 or 3");
    if (resolution < 4)
        throw std::invalid_argument("lattice_projector_measure_grid: resolution too small");
    GridMeasure out;
    if (r <= 0.0) return GridMeasure{0.0, 0.0};
    if (r >= 4.0 * dims) return GridMeasure{1.0, 0.0};
    out.value = grid_measure_once(dims, r, resolution);
    out.error_estimate = std::abs(out.value - grid_measure_once(dims, r, resolution / 2));
    return out;
}

double cycle_vs_symbol_check(int side, int dims, const std::vector<double>& r_grid) {
    if (side < 16) throw std::invalid_argument("cycle_vs_symbol_check: side must be >= 16");
    const auto cycle = graphs::build_cycle_torus(dims, side, 1 << 20);
    const auto dec = spectral::eigendecompose(graphs::adjacency_laplacian(cycle));
    double worst = 0.0;
    for (double r : r_grid) {
        const double proj = spectral::norm_1_to_inf(spectral::spectral_projector(dec, r)).value;
        const double ref = lattice_projector_measure(dims, r);
        if (ref <= 0.0)
            throw std::domain_error("cycle_vs_symbol_check: symbol measure vanishes on grid");
        worst = std::max(worst, std::abs(proj - ref) / ref);
    }
    return worst;
}

std::vector<double> eigenvalue_gap_midpoints(const Eigen::VectorXd& eigenvalues, double lo,
                                             double hi, int max_points) {
    std::vector<double> distinct;
    for (int i = 0; i < eigenvalues.size(); ++i) {
        const double v = eigenvalues[i];
        if (distinct.empty() || v > distinct.back() + 1e-12 * std::max(1.0, std::abs(v)))
            distinct.push_back(v);
    }
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        const double m = 0.5 * (distinct[i] + distinct[i + 1]);
        if (m >= lo && m <= hi) mids.push_back(m);
    }
    if (static_cast<int>(mids.size()) > max_points && max_points > 0) {
        std::vector<double> thinned;
        const double stride = static_cast<double>(mids.size() - 1) / (max_points - 1);
        for (int k = 0; k < max_points; ++k)
            thinned.push_back(mids[static_cast<std::size_t>(std::lround(k * stride))]);
        mids = std::move(thinned);
    }
    return mids;
}

double tree_gap(int branching_degree) {
    if (branching_degree <= 2)
        throw std::domain_error("tree_gap: branching degree must be > 2");
    const double n = branching_degree;
    return n - 2.0 * std::sqrt(n - 1.0);
}

std::vector<TreeConvergencePoint> tree_truncation_convergence(int branching_degree,
                                                              const std::vector<int>& radii,
                                                              int size_cap) {
    const double limit = 2.0 * std::sqrt(static_cast<double>(branching_degree) - 1.0);
    std::vector<TreeConvergencePoint> out;
    double prev = -1.0;
    int prev_radius = -1;
    for (int radius : radii) {
        const auto ball = graphs::build_tree_ball(branching_degree, radius, size_cap);
        const auto adj =
            spectral::SymmetricOperator::from_matrix(ball.adjacency.cast<double>());
        const auto dec = spectral::eigendecompose(adj);
        const double lam = dec.eigenvalues[dec.dim() - 1];
        if (lam >= limit)
            throw std::runtime_error("tree_truncation_convergence: ball eigenvalue reached "
                                     "the infinite-tree bound");
        if (prev_radius >= 0 && radius > prev_radius && lam < prev)
            throw std::runtime_error("tree_truncation_convergence: non-monotone lambda_max");
        out.push_back(TreeConvergencePoint{radius, lam, limit - lam});
        prev = lam;
        prev_radius = radius;
    }
    return out;
}

long long tree_ball_volume_closed_form(int branching_degree, int radius) {
    if (branching_degree < 3 || radius < 0)
        throw std::invalid_argument("tree_ball_volume_closed_form: need n >= 3, radius >= 0");
    long long vol = 1;
    long long shell = branching_degree;
    for (int level = 1; level <= radius; ++level) {
        vol += shell;
        shell *= (branching_degree - 1);
    }
    return vol;
}

AsymptoticFit fit_exponent(const std::vector<std::pair<double, double>>& samples,
                           double claimed) {
    if (samples.size() < 5)
        throw std::invalid_argument("fit_exponent: need at least 5 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : samples) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::domain_error("fit_exponent: samples must be positive");
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(samples.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::domain_error("fit_exponent: degenerate abscissae");
    AsymptoticFit fit;
    fit.samples = samples;
    fit.claimed_exponent = claimed;
    fit.fitted_exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.fitted_exponent * sx) / n;
    double ss = 0.0;
    for (const auto& [x, y] : samples) {
        const double resid = std::log(y) - (intercept + fit.fitted_exponent * std::log(x));
        ss += resid * resid;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

TransformedVolumeResult transformed_volume_check(int branching_degree, int radius_max) {
    if (branching_degree <= 2)
        throw std::domain_error("transformed_volume_check: branching degree must be > 2");
    const double kappa = std::log(static_cast<double>(branching_degree) - 1.0);
    std::vector<std::pair<double, double>> samples;
    double max_ratio = 0.0;
    for (int rho = 0; rho <= radius_max; ++rho) {
        const double r = std::exp(kappa * rho / 3.0);
        const double vol =
            static_cast<double>(tree_ball_volume_closed_form(branching_degree, rho));
        samples.emplace_back(r, vol);
        max_ratio = std::max(max_ratio, vol / (r * r * r));
    }
    TransformedVolumeResult out;
    out.max_volume_ratio = max_ratio;
    out.fit = fit_exponent(samples, 3.0);
    return out;
}

}  // namespace uncert::oracles
