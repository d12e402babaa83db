#include "cellcov/evaluate.hpp"

#include <cmath>
#include <stdexcept>

namespace cellcov::eval {

namespace {

// weighted interferer components for the variant, with simo cancellation applied
std::vector<gammasum::GammaComponent> weighted_interferers(const sim::SimScenario& scn, double r,
                                                           bool simo_cancel) {
    const std::vector<double> d = sim::interferer_distances(scn.geometry, r);
    std::vector<gammasum::GammaComponent> weighted =
        gammasum::weighted_components(scn.fading.interferers, d, scn.geometry.beta);
    if (simo_cancel) {
        std::size_t drop = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < weighted.size(); ++i) {
            const double mean_power = weighted[i].shape * weighted[i].scale;
            if (mean_power > best + 1e-15 * std::fabs(best)) {
                best = mean_power;
                drop = i;
            }
        }
        weighted.erase(weighted.begin() + static_cast<std::ptrdiff_t>(drop));
        if (weighted.empty()) throw std::invalid_argument("eval: no interferers left after cancel");
    }
    return weighted;
}

gammasum::CorrelationSpec corr_for(const sim::SimScenario& scn, std::size_t n) {
    if (!scn.corr) throw std::invalid_argument("eval: correlated variant needs a correlation spec");
    if (scn.corr->dimension() != n) throw std::invalid_argument("eval: correlation dimension mismatch");
    return *scn.corr;
}

}  // namespace

coverage::CoverageResult eval_coverage(const sim::SimScenario& scn, double r, double T,
                                       sim::Variant variant, coverage::MethodPolicy policy) {
    if (!(T > 0.0)) throw std::domain_error("eval_coverage: T must be positive");
    if (variant.simo_cancel && variant.correlated)
        throw std::invalid_argument("eval_coverage: simo-cancel is defined for the i.n.i.d. base");

    std::vector<gammasum::GammaComponent> weighted =
        weighted_interferers(scn, r, variant.simo_cancel);
    const double alpha_u = scn.fading.user.shape;
    const double k = std::pow(r, scn.geometry.beta) * T / scn.fading.user.scale;

    if (variant.shadowed) {
        if (!(scn.sigma_dB > 0.0))
            throw std::invalid_argument("eval_coverage: shadowed variant needs sigma_dB > 0");
        const gammasum::GammaComponent user_l =
            coverage::shadow_moment_match(scn.fading.user, scn.sigma_dB);
        std::vector<gammasum::GammaComponent> matched;
        matched.reserve(weighted.size());
        for (const auto& c : weighted) matched.push_back(coverage::shadow_moment_match(c, scn.sigma_dB));
        const double k_l = std::pow(r, scn.geometry.beta) * T / user_l.scale;
        if (!variant.correlated)
            return coverage::coverage_weighted_inid(user_l.shape, matched, k_l, policy);

        if (!scn.fading.common_shape)
            throw std::invalid_argument("eval_coverage: correlated variant needs equal shapes");
        const auto corr = corr_for(scn, matched.size());
        const std::size_t n = matched.size();
        std::vector<double> rho = corr.rho_matrix();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    rho[i * n + j] = coverage::shadow_corr_coeff(
                        rho[i * n + j], scn.rho_shadow, *scn.fading.common_shape, scn.sigma_dB);
        const auto corr_l = gammasum::CorrelationSpec::explicit_matrix(std::move(rho), n);
        const gammasum::EigenSpectrum spec = gammasum::correlated_spectrum(matched, corr_l);
        return coverage::coverage_weighted_correlated(user_l.shape, matched.front().shape, spec, k_l,
                                                      policy);
    }

    if (!variant.correlated) return coverage::coverage_weighted_inid(alpha_u, weighted, k, policy);

    if (!scn.fading.common_shape)
        throw std::invalid_argument("eval_coverage: correlated variant needs equal shapes");
    const auto corr = corr_for(scn, weighted.size());
    const gammasum::EigenSpectrum spec = gammasum::correlated_spectrum(weighted, corr);
    return coverage::coverage_weighted_correlated(alpha_u, *scn.fading.common_shape, spec, k, policy);
}

rate::RateResult eval_rate(const sim::SimScenario& scn, double r, sim::Variant variant,
                           double abs_tol) {
    return rate::avg_rate(
        [&](double T) { return eval_coverage(scn, r, std::max(T, 1e-300), variant); }, abs_tol);
}

ordering::SeriesComparison series_comparison(const sim::SimScenario& scn, double r, double T,
                                             int order_m) {
    if (!scn.fading.common_shape)
        throw std::invalid_argument("series_comparison: equal interferer shapes required");
    const std::vector<gammasum::GammaComponent> weighted = weighted_interferers(scn, r, false);
    const auto corr = corr_for(scn, weighted.size());
    const gammasum::EigenSpectrum spec = gammasum::correlated_spectrum(weighted, corr);
    const double k = std::pow(r, scn.geometry.beta) * T / scn.fading.user.scale;
    std::vector<double> u_inid(weighted.size()), u_corr(weighted.size());
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        u_inid[i] = k * weighted[i].scale;
        u_corr[i] = k * spec.values[i];
    }
    return ordering::fd_series_comparison(scn.fading.user.shape, *scn.fading.common_shape, u_inid,
                                          u_corr, order_m);
}

}  // namespace cellcov::eval
