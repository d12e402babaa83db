#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cellcov::ordering {

// Verdict of "a majorizes b": after sorting both ascending, the k smallest
// entries of b sum to at least those of a for every k < n, with equal totals.
struct MajorizationVerdict {
    bool holds = false;
    std::vector<double> partial_sum_slacks;  // sum_k(b) - sum_k(a), k = 1..n-1
    double total_sum_gap = 0.0;              // sum(b) - sum(a)
};

MajorizationVerdict majorizes(std::span<const double> a, std::span<const double> b,
                              double tol = 1e-9);

// prod_i (1 + k x_i)^{-a_i}, evaluated in the log domain. Symmetric and
// convex in x for equal a, hence Schur-convex.
double schur_product(double k, std::span<const double> x, std::span<const double> a);

// Analytic Hessian of the product above versus a central finite-difference
// Hessian. min_eigenvalue comes from the analytic matrix (expected >= 0);
// analytic_gap is the relative Frobenius distance between the two.
struct HessianCheck {
    double min_eigenvalue = 0.0;
    double analytic_gap = 0.0;
};

HessianCheck hessian_psd_check(double k, std::span<const double> x, std::span<const double> a,
                               double fd_step = 1e-4);

// Convex test functions phi on (0, inf) for the paired convex-order check.
// log1p_ratio is the rate kernel phi(x) = ln(1 + s/x).
enum class PhiFamily { log1p_ratio, quadratic, exponential };

struct ConvexOrderResult {
    double mean_gap = 0.0;  // E[phi(sum b_i G_i)] - E[phi(sum a_i G_i)], paired draws
    double std_err = 0.0;
};

// Paired Monte Carlo estimate of the convex-order gap between the weighted
// sums sum a_i G_i and sum b_i G_i over exchangeable G_i ~ Gamma(shape, 1).
// Requires weights_b to majorize weights_a.
ConvexOrderResult convex_order_test(std::span<const double> weights_a,
                                    std::span<const double> weights_b, double shape,
                                    PhiFamily phi, double phi_s, std::uint64_t trials,
                                    std::uint64_t seed);

// Layer-by-layer expansion of F_D[a, b..b; c; x] into symmetric monomial
// sums: one term per partition of each total order, coefficient
// (a)_m prod_l (b)_{pi_l} / ((c)_m prod_l pi_l!) shared between the two
// argument vectors.
struct SeriesComparison {
    struct Term {
        int layer = 0;                // total order m
        int part_index = 0;           // 1-based within the layer, paper order
        std::vector<int> partition;   // descending parts of m
        double coeff = 0.0;           // K_{m, j}
        double inid_sum = 0.0;        // symmetric monomial sum at x = 1/(1 + u_inid)
        double corr_sum = 0.0;        // symmetric monomial sum at x = 1/(1 + u_corr)
    };
    int order = 0;
    std::vector<Term> terms;
    std::vector<int> sign_profile;  // sign of (1 - alpha_u)_m per layer m = 1..order
};

// Compares the truncated coverage series of the i.n.i.d. and correlated
// scenarios; u vectors hold k * lambda'_i and k * lambdahat_i. order_m <= 6.
SeriesComparison fd_series_comparison(double alpha_u, double alpha_c,
                                      std::span<const double> u_inid,
                                      std::span<const double> u_corr, int order_m = 3);

}  // namespace cellcov::ordering
