#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace cellcov::specialfn {

// ---- scalar kernels -------------------------------------------------------

// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1. Direct product
// up to n = 50, log-domain accumulation with separate sign beyond.
double pochhammer(double a, int n);

// log |(a)_n| and its sign in {-1, 0, +1}
std::pair<double, int> log_pochhammer(double a, int n);

bool is_nonpositive_integer(double a, double tol = 1e-12);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
// a > 0, x >= 0.
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// ---- Lauricella function of the fourth kind -------------------------------

enum class FdStrategy { terminating_series, truncated_series, euler_integral, outer_quadrature };

const char* to_string(FdStrategy s);

struct EvalReport {
    double value = 0.0;
    FdStrategy strategy = FdStrategy::truncated_series;
    int terms_or_nodes = 0;      // series layers, or quadrature evaluations
    double est_abs_error = 0.0;  // heuristic bound, not rigorous
};

// Arguments of F_D^(N)[a, b_1..b_N; c; x_1..x_N].
struct FdArgs {
    double a = 0.0;
    std::vector<double> b;
    double c = 1.0;
    std::vector<double> x;

    std::size_t n() const { return b.size(); }
    void validate() const;  // b/x lengths match, b_i > 0, c > 0 and not a nonpositive integer
};

struct FdTransform {
    FdArgs args;       // (c - a, b, c, x_i / (x_i - 1))
    double prefactor;  // prod_i (1 - x_i)^{-b_i}; prefactor * F_D(args) = F_D(original)
};

// N-fold series truncated by total-order layers; terminates exactly when a
// is zero or a negative integer. Requires max_i |x_i| < 1 otherwise.
EvalReport fd_series(const FdArgs& args, double rel_tol = 1e-10, int max_total_order = 500);

// Euler-type argument transformation; involutive. Requires x_i != 1.
FdTransform fd_transform(const FdArgs& args);

// Strategy dispatcher for coverage-type arguments (x_i < 1, c > 0):
//   1. terminating series when a is zero or a negative integer (exact);
//   2. single Euler integral when c > a > 0 (adaptive quadrature, endpoint
//      singularities removed by substitution);
//   3. truncated N-fold series when N <= kSeriesMaxN and max|x_i| < 1;
//   4. otherwise StrategyUnavailable (callers fall back to outer quadrature).
EvalReport fd_eval(const FdArgs& args, double rel_tol = 1e-10);

inline constexpr std::size_t kSeriesMaxN = 4;

}  // namespace cellcov::specialfn
