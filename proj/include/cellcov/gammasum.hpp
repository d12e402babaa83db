#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cellcov/rng.hpp"

namespace cellcov::gammasum {

// Gamma-distributed channel power, scale parameterization: mean = shape * scale.
struct GammaComponent {
    double shape;  // alpha
    double scale;  // lambda
};

// Interferer correlation structure. The model matrix C carries ones on the
// diagonal and sqrt(rho_ij) off it; the exponential kind sets
// rho_pq = rho^|p-q| before the square root is applied.
class CorrelationSpec {
public:
    enum class Kind { exponential, explicit_matrix };

    static CorrelationSpec exponential(std::size_t n, double rho);
    // row-major n*n matrix of pairwise correlation coefficients rho_ij
    // (ones on the diagonal, entries in [0, 1])
    static CorrelationSpec explicit_matrix(std::vector<double> rho, std::size_t n);

    Kind kind() const { return kind_; }
    std::size_t dimension() const { return n_; }
    double rho() const { return rho_; }

    // pairwise coefficients rho_ij (before the square root)
    std::vector<double> rho_matrix() const;
    // the model matrix C (sqrt applied); throws if not symmetric positive definite
    std::vector<double> materialize() const;

private:
    CorrelationSpec(Kind k, std::size_t n, double rho, std::vector<double> mat)
        : kind_(k), n_(n), rho_(rho), mat_(std::move(mat)) {}
    Kind kind_;
    std::size_t n_;
    double rho_ = 0.0;
    std::vector<double> mat_;  // explicit rho_ij, row-major (explicit kind only)
};

// Eigenvalues of A = D C (equal-shape correlated sum reduction). values are
// sorted descending; source_diagonal holds the lambda'_i of D.
struct EigenSpectrum {
    std::vector<double> values;
    std::vector<double> source_diagonal;
};

// lambda'_i = lambda_i d_i^{-beta}, shapes unchanged
std::vector<GammaComponent> weighted_components(const std::vector<GammaComponent>& interferers,
                                                const std::vector<double>& distances_m, double beta);

// Spectrum of A = D C via the symmetric similarity D^{1/2} C D^{1/2}.
// Requires equal shapes across components and s.p.d. C.
EigenSpectrum correlated_spectrum(const std::vector<GammaComponent>& components,
                                  const CorrelationSpec& corr);

// Distribution of the sum of independent gamma components, evaluated by a
// single-series expansion around the smallest scale. All series coefficients
// are nonnegative and sum to one, which yields a rigorous tail bound for the
// truncation. Coefficients are cached and extended on demand, so repeated
// cdf() calls on one instance amortize the recursion; an instance is not
// safe for concurrent use.
class GammaSumDist {
public:
    explicit GammaSumDist(std::vector<GammaComponent> comps, double rel_tol = 1e-12,
                          std::size_t term_cap = 100000);

    double cdf(double x) const;
    double mean() const { return mean_; }
    double variance() const { return var_; }

private:
    void extend_cache(std::size_t k) const;

    std::vector<GammaComponent> comps_;
    double rel_tol_;
    std::size_t term_cap_;
    double lambda_min_ = 0.0;
    double rho_total_ = 0.0;  // sum of shapes
    double mean_ = 0.0, var_ = 0.0;
    mutable std::vector<double> coeff_;   // C * delta_k, nonnegative, sums to 1
    mutable std::vector<double> g_;       // g_j = sum_i alpha_i (1 - lambda_min/lambda_i)^j
    mutable std::vector<double> powers_;  // per-component running powers for g extension
    mutable double coeff_partial_ = 0.0;  // running sum of coeff_
};

// P(sum of components <= x); single-call convenience around GammaSumDist.
double sum_cdf(const std::vector<GammaComponent>& comps, double x, double rel_tol = 1e-10);

// One draw of sum_i lambda'_i G_i with independent G_i ~ Gamma(alpha_i, 1).
double sample_sum(const std::vector<GammaComponent>& comps, RngStream& rng);

// One draw of sum_i lambdahat_i G_i with i.i.d. G_i ~ Gamma(common_shape, 1).
// With the stream in the same state as an equal-shape i.n.i.d. call, both
// consume identical uniforms, enabling common-random-number pairing.
double sample_sum(const EigenSpectrum& spectrum, double common_shape, RngStream& rng);

}  // namespace cellcov::gammasum
