// quadrature.hpp - adaptive Simpson quadrature with an error estimate.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace uncert::quad {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

struct Worker {
    const std::function<double(double)>& f;
    double rel_tol;
    double abs_tol;
    int max_depth;
    QuadratureResult out;

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        out.evaluations += 2;
        const double h = b - a;
        const double left = h / 12.0 * (fa + 4.0 * flm + fm);
        const double right = h / 12.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        const double tol = std::max(abs_tol, rel_tol * std::abs(left + right));
        if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) {
            out.error_estimate += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, depth + 1) +
               recurse(m, b, fm, frm, fb, right, depth + 1);
    }
};

}  // namespace detail

inline QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol = 1e-12,
                                         double abs_tol = 0.0, int max_depth = 40) {
    detail::Worker w{f, rel_tol, abs_tol, max_depth, {}};
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    w.out.evaluations = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    w.out.value = w.recurse(a, b, fa, fm, fb, whole, 0);
    return w.out;
}

}  // namespace uncert::quad
