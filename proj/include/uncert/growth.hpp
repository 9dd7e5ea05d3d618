// growth.hpp - volume growth functions Phi and numerical certification of
// the admissibility inequality
//
//   int_0^r s^{-alpha} Phi(s) ds/s  <=  C_{I,alpha} r^{-alpha} Phi(r)
//
// on an interval I, together with the necessary lower bound Phi(r) >~ r^alpha
// at infinity and the monotone-density sufficient criterion with constant
// 2^{alpha+1}.

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace uncert::growth {

// Nonnegative function on [0, inf) with a declared local power exponent
// d0 > 0 at 0 (Phi(s) ~ s^d0 as s -> 0+). The factories validate the
// declaration with a two-decade consistency probe near 0.
struct GrowthFunction {
    std::function<double(double)> evaluator;
    double local_exponent_at_zero = 1.0;
    std::string description;

    double operator()(double s) const { return evaluator(s); }

    // scale * s^d
    static GrowthFunction power(double d, double scale = 1.0);
    // scale * s^delta for s <= 1, scale * e^{kappa (s-1)} for s >= 1
    static GrowthFunction glued_exp(double delta, double kappa, double scale = 1.0);
    // integral of the density f = 1 on [0,1], f(s) = (log s)^delta beyond 1
    static GrowthFunction log_density(double delta, double scale = 1.0);
    // log-linear interpolation between positive sample points
    static GrowthFunction table(std::vector<std::pair<double, double>> points, double d0);
    static GrowthFunction custom(std::function<double(double)> fn, double d0,
                                 std::string description);
};

enum class AdmissibilityVerdict { holds, fails, divergent_at_zero };

std::string verdict_name(AdmissibilityVerdict v);

struct AdmissibilityCertificate {
    double alpha = 0.0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    double constant = 0.0;  // sup over the grid of r^alpha Phi(r)^{-1} int_0^r s^{-alpha-1} Phi(s) ds
    int grid_points = 0;
    double quadrature_error_estimate = 0.0;
    AdmissibilityVerdict verdict = AdmissibilityVerdict::fails;
};

inline constexpr int kDefaultPointsPerDecade = 64;

std::vector<double> make_log_grid(double lo, double hi,
                                  int points_per_decade = kDefaultPointsPerDecade);

// int_0^r s^{-alpha-1} Phi(s) ds via the substitution s = r e^{-u}, dyadic
// panels in u with per-panel adaptive quadrature; the declared local exponent
// bounds the truncation tail below 1e-12 of the running total.
struct SingularIntegral {
    double value = 0.0;
    double error_estimate = 0.0;
};
SingularIntegral integrate_singular(const GrowthFunction& phi, double alpha, double r);

AdmissibilityCertificate check_admissibility(const GrowthFunction& phi, double alpha,
                                             double interval_lo, double interval_hi,
                                             int points_per_decade = kDefaultPointsPerDecade);
AdmissibilityCertificate check_admissibility(const GrowthFunction& phi, double alpha,
                                             const std::vector<double>& grid);

struct MonotoneDensityResult {
    bool holds = false;
    double constant_bound = 0.0;  // 2^{alpha+1}
};
MonotoneDensityResult monotone_density_criterion(const std::function<double(double)>& f,
                                                 double alpha, double r0,
                                                 const std::vector<double>& grid);

struct LowerBoundResult {
    bool satisfied = false;
    double witness_constant = 0.0;  // int_0^{r'} s^{-alpha-1} Phi ds / C_{I,alpha}
};
LowerBoundResult necessary_lower_bound_check(const GrowthFunction& phi, double alpha,
                                             double r_prime,
                                             const std::vector<double>& grid,
                                             const AdmissibilityCertificate& certificate);

// Measured constant at alpha_prime <= alpha does not exceed the constant at
// alpha on the same grid.
bool alpha_monotonicity_check(const GrowthFunction& phi, double alpha, double alpha_prime,
                              double interval_lo, double interval_hi,
                              int points_per_decade = kDefaultPointsPerDecade);

}  // namespace uncert::growth
