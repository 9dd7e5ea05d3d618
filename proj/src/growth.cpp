#include "uncert/growth.hpp"

#include "uncert/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace uncert::growth {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

void validate_growth(const GrowthFunction& g) {
    if (!(g.local_exponent_at_zero > 0.0))
        throw std::invalid_argument("GrowthFunction: local exponent at zero must be > 0");
    bool nonnull = false;
    for (double s : {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        const double v = g.evaluator(s);
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("GrowthFunction: negative or non-finite value at s = " +
                                        fmt(s));
        if (v > 0.0) nonnull = true;
    }
    if (!nonnull) throw std::invalid_argument("GrowthFunction: identically zero on sample grid");

    // Two-decade probe of the declared exponent near 0.
    const double s1 = 1e-4, s2 = 1e-6;
    const double q1 = g.evaluator(s1) / std::pow(s1, g.local_exponent_at_zero);
    const double q2 = g.evaluator(s2) / std::pow(s2, g.local_exponent_at_zero);
    if (!(q2 > 0.0) || !(q1 / q2 >= 0.1 && q1 / q2 <= 10.0))
        throw std::invalid_argument(
            "GrowthFunction: declared local exponent " + fmt(g.local_exponent_at_zero) +
            " inconsistent with sampled behavior near 0 (probe ratio " +
            fmt(q2 > 0.0 ? q1 / q2 : std::numeric_limits<double>::quiet_NaN()) + ")");
}

double log_density_tail(double s, double delta) {
    // int_1^s (log u)^delta du for s >= 1.
    if (s <= 1.0) return 0.0;
    if (delta == 1.0) return s * std::log(s) - s + 1.0;
    if (delta == 2.0) {
        const double l = std::log(s);
        return s * (l * l - 2.0 * l + 2.0) - 2.0;
    }
    // u = e^v: int_0^{log s} v^delta e^v dv.
    const double top = std::log(s);
    auto integrand = [delta](double v) { return std::pow(v, delta) * std::exp(v); };
    return quad::adaptive_simpson(integrand, 0.0, top, 1e-12).value;
}

}  // namespace

GrowthFunction GrowthFunction::power(double d, double scale) {
    if (!(d > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("GrowthFunction::power: d and scale must be > 0");
    GrowthFunction g;
    g.evaluator = [d, scale](double s) { return s <= 0.0 ? 0.0 : scale * std::pow(s, d); };
    g.local_exponent_at_zero = d;
    g.description = "power(d=" + fmt(d) + ", scale=" + fmt(scale) + ")";
    validate_growth(g);
    return g;
}

GrowthFunction GrowthFunction::glued_exp(double delta, double kappa, double scale) {
    if (!(delta > 0.0) || !(kappa > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("GrowthFunction::glued_exp: parameters must be > 0");
    GrowthFunction g;
    g.evaluator = [delta, kappa, scale](double s) {
        if (s <= 0.0) return 0.0;
        return s <= 1.0 ? scale * std::pow(s, delta) : scale * std::exp(kappa * (s - 1.0));
    };
    g.local_exponent_at_zero = delta;
    g.description =
        "glued_exp(delta=" + fmt(delta) + ", kappa=" + fmt(kappa) + ", scale=" + fmt(scale) + ")";
    validate_growth(g);
    return g;
}

GrowthFunction GrowthFunction::log_density(double delta, double scale) {
    if (!(delta > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("GrowthFunction::log_density: parameters must be > 0");
    GrowthFunction g;
    g.evaluator = [delta, scale](double s) {
        if (s <= 0.0) return 0.0;
        if (s <= 1.0) return scale * s;
        return scale * (1.0 + log_density_tail(s, delta));
    };
    g.local_exponent_at_zero = 1.0;
    g.description = "log_density(delta=" + fmt(delta) + ", scale=" + fmt(scale) + ")";
    validate_growth(g);
    return g;
}

GrowthFunction GrowthFunction::table(std::vector<std::pair<double, double>> points, double d0) {
    if (points.size() < 2)
        throw std::invalid_argument("GrowthFunction::table: need at least 2 points");
    std::sort(points.begin(), points.end());
    for (const auto& [s, v] : points)
        if (!(s > 0.0) || !(v > 0.0))
            throw std::invalid_argument("GrowthFunction::table: points must be positive");
    GrowthFunction g;
    g.local_exponent_at_zero = d0;
    g.description = "table(" + std::to_string(points.size()) + " points)";
    g.evaluator = [pts = std::move(points)](double s) {
        if (s <= 0.0) return 0.0;
        const double ls = std::log(s);
        // Log-linear interpolation, power-law extrapolation from the end slopes.
        auto seg = [&](std::size_t i) {
            const double x0 = std::log(pts[i].first), x1 = std::log(pts[i + 1].first);
            const double y0 = std::log(pts[i].second), y1 = std::log(pts[i + 1].second);
            const double t = (ls - x0) / (x1 - x0);
            return std::exp(y0 + t * (y1 - y0));
        };
        if (s <= pts.front().first) return seg(0);
        if (s >= pts.back().first) return seg(pts.size() - 2);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (s <= pts[i + 1].first) return seg(i);
        return pts.back().second;
    };
    validate_growth(g);
    return g;
}

GrowthFunction GrowthFunction::custom(std::function<double(double)> fn, double d0,
                                      std::string description) {
    GrowthFunction g;
    g.evaluator = std::move(fn);
    g.local_exponent_at_zero = d0;
    g.description = std::move(description);
    validate_growth(g);
    return g;
}

std::string verdict_name(AdmissibilityVerdict v) {
    switch (v) {
        case AdmissibilityVerdict::holds: return "holds";
        case AdmissibilityVerdict::fails: return "fails";
        case AdmissibilityVerdict::divergent_at_zero: return "divergent_at_zero";
    }
    return "fails";
}

std::vector<double> make_log_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("make_log_grid: need 0 < lo < hi");
    if (points_per_decade < 1)
        throw std::invalid_argument("make_log_grid: points_per_decade must be >= 1");
    const double llo = std::log10(lo), lhi = std::log10(hi);
    const int n = std::max(2, static_cast<int>(std::ceil((lhi - llo) * points_per_decade)) + 1);
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

SingularIntegral integrate_singular(const GrowthFunction& phi, double alpha, double r) {
    // int_0^r s^{-alpha-1} Phi(s) ds = r^{-alpha} int_0^inf e^{alpha u} Phi(r e^{-u}) du.
    const double d0 = phi.local_exponent_at_zero;
    if (!(d0 > alpha))
        throw std::domain_error("integrate_singular: divergent (local exponent <= alpha)");
    auto integrand = [&](double u) { return std::exp(alpha * u) * phi(r * std::exp(-u)); };

    double total = 0.0;
    double err = 0.0;
    const int max_panels = 400;
    double tail = std::numeric_limits<double>::infinity();
    for (int k = 0; k < max_panels; ++k) {
        const auto panel = quad::adaptive_simpson(integrand, k, k + 1, 1e-12,
                                                  1e-300, 38);
        total += panel.value;
        err += panel.error_estimate;
        tail = integrand(k + 1) / (d0 - alpha);
        if (k >= 1 && tail <= 1e-12 * std::max(total, 1e-300)) break;
    }
    return SingularIntegral{total * std::pow(r, -alpha), err * std::pow(r, -alpha) + tail};
}

AdmissibilityCertificate check_admissibility(const GrowthFunction& phi, double alpha,
                                             const std::vector<double>& grid) {
    if (!(alpha > 0.0)) throw std::invalid_argument("check_admissibility: alpha must be > 0");
    if (grid.empty()) throw std::invalid_argument("check_admissibility: empty grid");

    AdmissibilityCertificate cert;
    cert.alpha = alpha;
    cert.interval_lo = grid.front();
    cert.interval_hi = grid.back();
    cert.grid_points = static_cast<int>(grid.size());

    if (phi.local_exponent_at_zero <= alpha) {
        cert.verdict = AdmissibilityVerdict::divergent_at_zero;
        return cert;
    }

    double worst = 0.0;
    double err = 0.0;
    for (double r : grid) {
        const double pr = phi(r);
        if (pr == 0.0)
            throw std::domain_error("check_admissibility: Phi vanishes at grid point r = " +
                                    fmt(r));
        const auto integral = integrate_singular(phi, alpha, r);
        const double ratio = std::pow(r, alpha) * integral.value / pr;
        err = std::max(err, std::pow(r, alpha) * integral.error_estimate / pr);
        if (!std::isfinite(ratio)) {
            cert.verdict = AdmissibilityVerdict::fails;
            cert.constant = std::numeric_limits<double>::infinity();
            return cert;
        }
        worst = std::max(worst, ratio);
    }
    cert.constant = worst;
    cert.quadrature_error_estimate = err;
    cert.verdict = AdmissibilityVerdict::holds;
    return cert;
}

AdmissibilityCertificate check_admissibility(const GrowthFunction& phi, double alpha,
                                             double interval_lo, double interval_hi,
                                             int points_per_decade) {
    double lo = interval_lo;
    if (!(lo > 0.0)) lo = interval_hi * 1e-8;
    // One grid step of margin below the requested interval.
    const double step = std::pow(10.0, 1.0 / points_per_decade);
    auto grid = make_log_grid(lo / step, interval_hi, points_per_decade);
    return check_admissibility(phi, alpha, grid);
}

MonotoneDensityResult monotone_density_criterion(const std::function<double(double)>& f,
                                                 double alpha, double r0,
                                                 const std::vector<double>& grid) {
    MonotoneDensityResult res;
    res.constant_bound = std::pow(2.0, alpha + 1.0);
    double prev = -std::numeric_limits<double>::infinity();
    bool holds = true;
    for (double s : grid) {
        if (s <= r0) continue;
        const double fs = f(s);
        if (fs < 0.0)
            throw std::domain_error("monotone_density_criterion: density negative at s = " +
                                    fmt(s));
        const double v = fs * std::pow(s, -alpha);
        if (v < prev * (1.0 - 1e-12)) {
            holds = false;
            break;
        }
        prev = v;
    }
    res.holds = holds;
    return res;
}

static LowerBoundResult necessary_lowerbound_impl(const GrowthFunction& phi, double alpha,
                                                  double r_prime,
                                                  const std::vector<double>& grid,
                                                  double constant) {
    LowerBoundResult res;
    const auto integral = integrate_singular(phi, alpha, r_prime);
    // integrate_singular returns r^{-alpha} * (u-integral) = int_0^{r'} s^{-alpha-1} Phi ds.
    res.witness_constant = integral.value / constant;
    double lowest = std::numeric_limits<double>::infinity();
    for (double r : grid) {
        if (r < r_prime) continue;
        lowest = std::min(lowest, phi(r) * std::pow(r, -alpha));
    }
    res.satisfied =
        res.witness_constant > 0.0 && lowest >= res.witness_constant * (1.0 - 1e-9);
    return res;
}

LowerBoundResult necessary_lower_bound_check(const GrowthFunction& phi, double alpha,
                                             double r_prime, const std::vector<double>& grid,
                                             const AdmissibilityCertificate& certificate) {
    if (certificate.verdict != AdmissibilityVerdict::holds)
        throw std::invalid_argument(
            "necessary_lower_bound_check: certificate does not hold");
    return necessary_lowerbound_impl(phi, alpha, r_prime, grid, certificate.constant);
}

bool alpha_monotonicity_check(const GrowthFunction& phi, double alpha, double alpha_prime,
                              double interval_lo, double interval_hi, int points_per_decade) {
    if (alpha_prime > alpha)
        throw std::invalid_argument("alpha_monotonicity_check: need alpha_prime <= alpha");
    const auto base = check_admissibility(phi, alpha, interval_lo, interval_hi,
                                          points_per_decade);
    if (base.verdict != AdmissibilityVerdict::holds)
        throw std::invalid_argument("alpha_monotonicity_check: no certificate at alpha");
    if (alpha_prime == alpha) return true;
    const auto lower = check_admissibility(phi, alpha_prime, interval_lo, interval_hi,
                                           points_per_decade);
    return lower.verdict == AdmissibilityVerdict::holds &&
           lower.constant <= base.constant * (1.0 + 1e-9);
}

}  // namespace uncert::growth
