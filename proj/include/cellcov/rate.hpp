#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cellcov/coverage.hpp"

namespace cellcov::rate {

// Average ergodic rate in nats per channel use.
struct RateResult {
    double value = 0.0;
    double est_abs_error = 0.0;
    coverage::Method method = coverage::Method::fd_analytic;  // underlying coverage path
};

// R = int_0^inf P_c(e^t - 1) dt by adaptive quadrature over the threshold in
// nats. The upper limit grows until the integrand falls below abs_tol / 10;
// the residual geometric tail is folded into est_abs_error.
RateResult avg_rate(const std::function<coverage::CoverageResult(double /*T linear*/)>& coverage_at_T,
                    double abs_tol = 1e-7);

struct RatePoint {
    double r = 0.0;
    RateResult rate;
};

// Rate at each grid radius, with the scenario baked into the evaluator.
std::vector<RatePoint> rate_curve(
    const std::function<coverage::CoverageResult(double r, double T)>& coverage_eval,
    std::span<const double> r_grid, double abs_tol = 1e-7);

}  // namespace cellcov::rate
