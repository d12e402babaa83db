#include "cellcov/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cellcov/errors.hpp"
#include "cellcov/quadrature.hpp"
#include "cellcov/specialfn.hpp"

namespace cellcov::coverage {

namespace {

bool near(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

bool is_positive_integer(double a) {
    return a >= 1.0 - 1e-12 && std::fabs(a - std::nearbyint(a)) <= 1e-12;
}

CoverageResult clamp01(CoverageResult r) {
    r.value = std::min(1.0, std::max(0.0, r.value));
    return r;
}

// product form exp(-sum alpha_i log(1 + u_i)); exact when alpha_u = 1
CoverageResult rayleigh_product(std::span<const double> alphas, std::span<const double> u) {
    double lg = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) lg -= alphas[i] * std::log1p(u[i]);
    return {std::exp(lg), Method::closed_form_rayleigh, 0.0};
}

CoverageResult via_fd(double alpha_u, std::span<const double> alphas, std::span<const double> u) {
    specialfn::FdArgs args;
    args.a = 1.0 - alpha_u;
    args.b.assign(alphas.begin(), alphas.end());
    double alpha_sum = 0.0;
    for (double a : alphas) alpha_sum += a;
    args.c = alpha_sum + 1.0;
    args.x.resize(u.size());
    double log_pre = std::lgamma(alpha_sum + alpha_u) - std::lgamma(alpha_sum + 1.0) - std::lgamma(alpha_u);
    for (std::size_t i = 0; i < u.size(); ++i) {
        args.x[i] = 1.0 / (1.0 + u[i]);
        log_pre += alphas[i] * std::log(args.x[i]);
    }
    const specialfn::EvalReport rep = specialfn::fd_eval(args);
    const double pre = std::exp(log_pre);
    return clamp01({pre * rep.value, Method::fd_analytic, pre * rep.est_abs_error});
}

// P_c = int_0^inf t^{alpha_u - 1} e^{-t} / Gamma(alpha_u) * F_I(t) dt with
// F_I the cdf of sum u_i G_i; upper limit at mean + 40 sd of the user gamma.
CoverageResult via_outer_quadrature(double alpha_u, std::span<const double> alphas,
                                    std::span<const double> u) {
    std::vector<GammaComponent> comps(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) comps[i] = {alphas[i], u[i]};
    gammasum::GammaSumDist dist(std::move(comps));

    const double t_max = alpha_u + 40.0 * std::sqrt(alpha_u);
    const double lg_norm = std::lgamma(alpha_u);
    const auto density_part = [&](double t) { return std::exp(-t - lg_norm) * dist.cdf(t); };

    const double abs_tol = 1e-10;
    QuadResult total;
    const double split = std::min(1.0, 0.5 * t_max);
    if (alpha_u < 1.0) {
        // remove the t^{alpha_u - 1} endpoint singularity with t = v^{1/alpha_u}
        const double inv_a = 1.0 / alpha_u;
        QuadResult left = integrate_gk(
            [&](double v) {
                const double t = std::pow(v, inv_a);
                return inv_a * density_part(t);
            },
            0.0, std::pow(split, alpha_u), abs_tol);
        total.value += left.value;
        total.abs_error += left.abs_error;
        total.evals += left.evals;
    } else {
        QuadResult left = integrate_gk(
            [&](double t) { return std::pow(t, alpha_u - 1.0) * density_part(t); }, 0.0, split, abs_tol);
        total.value += left.value;
        total.abs_error += left.abs_error;
        total.evals += left.evals;
    }
    QuadResult right = integrate_gk(
        [&](double t) { return std::pow(t, alpha_u - 1.0) * density_part(t); }, split, t_max, abs_tol);
    total.value += right.value;
    total.abs_error += right.abs_error;

    const double tail = specialfn::reg_upper_gamma(alpha_u, t_max);
    return clamp01({total.value, Method::outer_quadrature, total.abs_error + tail});
}

}  // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::closed_form_rayleigh: return "closed-form-rayleigh";
        case Method::fd_analytic: return "fd-analytic";
        case Method::outer_quadrature: return "outer-quadrature";
    }
    return "?";
}

FadingSpec FadingSpec::make(GammaComponent user, std::vector<GammaComponent> interferers) {
    FadingSpec spec;
    spec.user = user;
    spec.interferers = std::move(interferers);
    if (!spec.interferers.empty()) {
        const double a0 = spec.interferers.front().shape;
        bool equal = true;
        for (const auto& c : spec.interferers)
            if (std::fabs(c.shape - a0) > 1e-12 * std::max(1.0, a0)) equal = false;
        if (equal) spec.common_shape = a0;
    }
    spec.validate();
    return spec;
}

void FadingSpec::validate() const {
    if (!(user.shape > 0.0) || !(user.scale > 0.0))
        throw std::invalid_argument("FadingSpec: user parameters must be positive");
    if (interferers.empty()) throw std::invalid_argument("FadingSpec: no interferers");
    for (const auto& c : interferers)
        if (!(c.shape > 0.0) || !(c.scale > 0.0))
            throw std::invalid_argument("FadingSpec: interferer parameters must be positive");
}

double CoverageQuery::k(double lambda_u) const { return std::pow(r, geometry->beta) * T / lambda_u; }

void CoverageQuery::validate() const {
    if (geometry == nullptr) throw std::invalid_argument("CoverageQuery: no geometry");
    if (!(T > 0.0)) throw std::domain_error("CoverageQuery: T must be positive");
    if (!(r > 0.0)) throw std::domain_error("CoverageQuery: r must be positive");
}

CoverageResult coverage_core(double alpha_u, std::span<const double> alphas,
                             std::span<const double> u, MethodPolicy policy) {
    if (alphas.size() != u.size() || u.empty())
        throw std::invalid_argument("coverage_core: argument length mismatch");
    if (!(alpha_u > 0.0)) throw std::invalid_argument("coverage_core: alpha_u must be positive");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!(alphas[i] > 0.0) || !(u[i] >= 0.0)) throw std::invalid_argument("coverage_core: bad component");

    switch (policy) {
        case MethodPolicy::force_quadrature:
            return via_outer_quadrature(alpha_u, alphas, u);
        case MethodPolicy::force_fd:
            return near(alpha_u, 1.0) ? rayleigh_product(alphas, u) : via_fd(alpha_u, alphas, u);
        case MethodPolicy::automatic:
            break;
    }
    if (near(alpha_u, 1.0)) return rayleigh_product(alphas, u);
    if (is_positive_integer(alpha_u)) return via_fd(alpha_u, alphas, u);
    try {
        return via_fd(alpha_u, alphas, u);
    } catch (const StrategyUnavailable&) {
    } catch (const NonConvergence&) {
    }
    return via_outer_quadrature(alpha_u, alphas, u);
}

CoverageResult coverage_weighted_inid(double alpha_u, const std::vector<GammaComponent>& weighted,
                                      double k, MethodPolicy policy) {
    std::vector<double> alphas(weighted.size()), u(weighted.size());
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        alphas[i] = weighted[i].shape;
        u[i] = k * weighted[i].scale;
    }
    return coverage_core(alpha_u, alphas, u, policy);
}

CoverageResult coverage_weighted_correlated(double alpha_u, double common_shape,
                                            const EigenSpectrum& spectrum, double k,
                                            MethodPolicy policy) {
    std::vector<double> alphas(spectrum.values.size(), common_shape);
    std::vector<double> u(spectrum.values.size());
    for (std::size_t i = 0; i < spectrum.values.size(); ++i) u[i] = k * spectrum.values[i];
    return coverage_core(alpha_u, alphas, u, policy);
}

namespace {

std::vector<GammaComponent> weighted_for_query(const FadingSpec& spec, const CoverageQuery& q) {
    const std::vector<double> d = sim::interferer_distances(*q.geometry, q.r);
    if (d.size() != spec.interferers.size())
        throw std::invalid_argument("coverage: interferer count does not match geometry");
    return gammasum::weighted_components(spec.interferers, d, q.geometry->beta);
}

}  // namespace

CoverageResult coverage_inid(const FadingSpec& spec, const CoverageQuery& q, MethodPolicy policy) {
    spec.validate();
    q.validate();
    return coverage_weighted_inid(spec.user.shape, weighted_for_query(spec, q), q.k(spec.user.scale), policy);
}

CoverageResult coverage_rayleigh_inid(const FadingSpec& spec, const CoverageQuery& q) {
    spec.validate();
    q.validate();
    if (!near(spec.user.shape, 1.0))
        throw std::domain_error("coverage_rayleigh_inid: requires alpha_u = 1");
    const auto weighted = weighted_for_query(spec, q);
    const double k = q.k(spec.user.scale);
    std::vector<double> alphas(weighted.size()), u(weighted.size());
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        alphas[i] = weighted[i].shape;
        u[i] = k * weighted[i].scale;
    }
    return rayleigh_product(alphas, u);
}

CoverageResult coverage_correlated(const FadingSpec& spec, const CoverageQuery& q,
                                   const CorrelationSpec& corr, MethodPolicy policy) {
    spec.validate();
    q.validate();
    if (!spec.common_shape)
        throw std::invalid_argument("coverage_correlated: interferer shapes must be equal");
    const auto weighted = weighted_for_query(spec, q);
    const EigenSpectrum spectrum = gammasum::correlated_spectrum(weighted, corr);
    return coverage_weighted_correlated(spec.user.shape, *spec.common_shape, spectrum,
                                        q.k(spec.user.scale), policy);
}

GammaComponent shadow_moment_match(const GammaComponent& comp, double sigma_dB) {
    if (sigma_dB < 0.0) throw std::domain_error("shadow_moment_match: sigma_dB < 0");
    const double s2 = (sigma_dB / 8.686) * (sigma_dB / 8.686);
    const double alpha_l = comp.shape / ((comp.shape + 1.0) * std::exp(s2) - comp.shape);
    const double lambda_l = (1.0 + comp.shape) * comp.scale * std::exp(1.5 * s2) -
                            comp.shape * comp.scale * std::exp(0.5 * s2);
    return {alpha_l, lambda_l};
}

double shadow_corr_coeff(double rho_fast, double rho_shadow, double alpha_c, double sigma_dB) {
    if (!(sigma_dB > 0.0))
        throw std::domain_error("shadow_corr_coeff: sigma_dB = 0 leaves the composite model undefined");
    if (!(rho_fast >= 0.0 && rho_fast <= 1.0) || !(rho_shadow >= 0.0 && rho_shadow <= 1.0))
        throw std::domain_error("shadow_corr_coeff: correlation coefficients must be in [0,1]");
    const double s2 = (sigma_dB / 8.686) * (sigma_dB / 8.686);
    const double inv_em1 = 1.0 / std::expm1(s2);
    return (rho_fast * inv_em1 + rho_shadow * alpha_c + rho_fast * rho_shadow) /
           (alpha_c + inv_em1 + 1.0);
}

CoverageResult coverage_shadowed(const FadingSpec& spec, const CoverageQuery& q,
                                 const std::optional<CorrelationSpec>& corr, double sigma_dB,
                                 double rho_shadow, MethodPolicy policy) {
    spec.validate();
    q.validate();
    if (sigma_dB == 0.0) {
        if (!corr) return coverage_inid(spec, q, policy);
        return coverage_correlated(spec, q, *corr, policy);  // limit of eq-rho as sigma -> 0
    }

    FadingSpec shadowed;
    shadowed.user = shadow_moment_match(spec.user, sigma_dB);
    shadowed.interferers.reserve(spec.interferers.size());
    for (const auto& c : spec.interferers) shadowed.interferers.push_back(shadow_moment_match(c, sigma_dB));
    if (spec.common_shape) shadowed.common_shape = shadowed.interferers.front().shape;

    if (!corr) return coverage_inid(shadowed, q, policy);

    if (!spec.common_shape)
        throw std::invalid_argument("coverage_shadowed: correlated case needs equal shapes");
    const std::size_t n = corr->dimension();
    std::vector<double> rho = corr->rho_matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) rho[i * n + j] = shadow_corr_coeff(rho[i * n + j], rho_shadow, *spec.common_shape, sigma_dB);
    const CorrelationSpec corr_l = CorrelationSpec::explicit_matrix(std::move(rho), n);
    return coverage_correlated(shadowed, q, corr_l, policy);
}

}  // namespace cellcov::coverage
