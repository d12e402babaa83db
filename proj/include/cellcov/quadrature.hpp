#pragma once

#include <functional>

namespace cellcov {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // summed per-interval error estimates
    int evals = 0;           // integrand evaluations
};

// Adaptive Gauss-Kronrod (G7, K15) quadrature on [a, b]. The worst interval
// is bisected until the summed error estimate drops below abs_tol or the
// interval budget runs out; in the latter case the best value is returned
// with its (larger) error estimate.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_intervals = 4000);

}  // namespace cellcov
