#include "cellcov/rate.hpp"

#include <cmath>

#include "cellcov/errors.hpp"
#include "cellcov/quadrature.hpp"

namespace cellcov::rate {

RateResult avg_rate(const std::function<coverage::CoverageResult(double)>& coverage_at_T,
                    double abs_tol) {
    RateResult out;
    bool have_method = false;
    double max_cov_err = 0.0;
    const auto integrand = [&](double t) {
        const coverage::CoverageResult c = coverage_at_T(std::expm1(t));
        if (!have_method) {
            out.method = c.method;
            have_method = true;
        }
        max_cov_err = std::max(max_cov_err, c.est_abs_error);
        return c.value;
    };

    const double threshold = 0.1 * abs_tol;
    double t_max = 24.0;
    double g_end = integrand(t_max);
    while (g_end > threshold) {
        if (t_max >= 200.0)
            throw NonConvergence("avg_rate: integrand not below threshold by t = 200");
        t_max = std::min(200.0, t_max + 24.0);
        g_end = integrand(t_max);
    }

    const QuadResult q = integrate_gk(integrand, 0.0, t_max, abs_tol);
    out.value = q.value;
    out.est_abs_error = q.abs_error;

    // geometric tail estimate from the decay over the last unit interval
    if (g_end > 0.0) {
        const double g_prev = integrand(t_max - 1.0);
        if (g_prev > g_end) {
            const double decay = std::log(g_prev / g_end);
            out.est_abs_error += g_end / decay;
        } else {
            out.est_abs_error += threshold;  // decay not resolvable; integrand already below it
        }
    }
    out.est_abs_error += max_cov_err * t_max;
    return out;
}

std::vector<RatePoint> rate_curve(
    const std::function<coverage::CoverageResult(double, double)>& coverage_eval,
    std::span<const double> r_grid, double abs_tol) {
    std::vector<RatePoint> out;
    out.reserve(r_grid.size());
    for (double r : r_grid)
        out.push_back({r, avg_rate([&](double T) { return coverage_eval(r, T); }, abs_tol)});
    return out;
}

}  // namespace cellcov::rate
