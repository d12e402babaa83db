#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cellcov/gammasum.hpp"
#include "cellcov/geometry.hpp"

namespace cellcov::coverage {

using gammasum::CorrelationSpec;
using gammasum::EigenSpectrum;
using gammasum::GammaComponent;

// Channel fading parameters: user component plus one component per
// interfering BS (scales before distance weighting). common_shape is set iff
// all interferer shapes coincide, which the correlated analysis requires.
struct FadingSpec {
    GammaComponent user;
    std::vector<GammaComponent> interferers;
    std::optional<double> common_shape;

    static FadingSpec make(GammaComponent user, std::vector<GammaComponent> interferers);
    void validate() const;
};

struct CoverageQuery {
    double T;  // target SIR, linear
    double r;  // user-BS distance (m)
    const sim::NetworkGeometry* geometry = nullptr;

    // k = r^beta T / lambda_u of the coverage closed forms
    double k(double lambda_u) const;
    void validate() const;
};

enum class Method { closed_form_rayleigh, fd_analytic, outer_quadrature };
const char* to_string(Method m);

enum class MethodPolicy { automatic, force_fd, force_quadrature };

struct CoverageResult {
    double value = 0.0;  // in [0, 1]
    Method method = Method::fd_analytic;
    double est_abs_error = 0.0;
};

// Scale-free core: P(G_u > sum_i u_i G_i) with G_u ~ Gamma(alpha_u, 1),
// G_i ~ Gamma(alpha_i, 1) independent, u_i = k * lambda'_i.
CoverageResult coverage_core(double alpha_u, std::span<const double> alphas,
                             std::span<const double> u, MethodPolicy policy = MethodPolicy::automatic);

// Coverage from distance-weighted components (scales lambda'_i) and k.
CoverageResult coverage_weighted_inid(double alpha_u, const std::vector<GammaComponent>& weighted,
                                      double k, MethodPolicy policy = MethodPolicy::automatic);
CoverageResult coverage_weighted_correlated(double alpha_u, double common_shape,
                                            const EigenSpectrum& spectrum, double k,
                                            MethodPolicy policy = MethodPolicy::automatic);

// P_c(T, r) with independent non-identical interferers.
CoverageResult coverage_inid(const FadingSpec& spec, const CoverageQuery& q,
                             MethodPolicy policy = MethodPolicy::automatic);

// Exact Rayleigh-user closed form, requires alpha_u = 1.
CoverageResult coverage_rayleigh_inid(const FadingSpec& spec, const CoverageQuery& q);

// P_c(T, r) with correlated equal-shape interferers: the i.n.i.d. functional
// form evaluated at the eigenvalues of A = D C.
CoverageResult coverage_correlated(const FadingSpec& spec, const CoverageQuery& q,
                                   const CorrelationSpec& corr,
                                   MethodPolicy policy = MethodPolicy::automatic);

// Gamma moment-matching of the composite gamma-lognormal channel,
// sigma = sigma_dB / 8.686:
//   alpha_l  = alpha / ((alpha+1) e^{sigma^2} - alpha)
//   lambda_l = (1+alpha) lambda e^{3 sigma^2 / 2} - alpha lambda e^{sigma^2 / 2}
GammaComponent shadow_moment_match(const GammaComponent& comp, double sigma_dB);

// Composite correlation coefficient of two generalized-K links from the fast
// (rho) and shadowing (rho_s) coefficients. Requires sigma_dB > 0.
double shadow_corr_coeff(double rho_fast, double rho_shadow, double alpha_c, double sigma_dB);

// Coverage under lognormal shadowing: moment-match every component, apply
// shadow_corr_coeff entrywise to the correlation structure when present, then
// delegate to the i.n.i.d. / correlated evaluators.
CoverageResult coverage_shadowed(const FadingSpec& spec, const CoverageQuery& q,
                                 const std::optional<CorrelationSpec>& corr, double sigma_dB,
                                 double rho_shadow = 0.0,
                                 MethodPolicy policy = MethodPolicy::automatic);

}  // namespace cellcov::coverage
