#include "cellcov/gammasum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cellcov/errors.hpp"
#include "cellcov/linalg.hpp"
#include "cellcov/specialfn.hpp"

namespace cellcov::gammasum {

// ---- CorrelationSpec --------------------------------------------------------

CorrelationSpec CorrelationSpec::exponential(std::size_t n, double rho) {
    if (n == 0) throw std::invalid_argument("CorrelationSpec: empty dimension");
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("CorrelationSpec: rho must be in [0,1)");
    return CorrelationSpec(Kind::exponential, n, rho, {});
}

CorrelationSpec CorrelationSpec::explicit_matrix(std::vector<double> rho, std::size_t n) {
    if (rho.size() != n * n) throw std::invalid_argument("CorrelationSpec: matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (rho[i * n + i] != 1.0) throw std::invalid_argument("CorrelationSpec: diagonal must be 1");
        for (std::size_t j = 0; j < n; ++j) {
            if (!(rho[i * n + j] >= 0.0 && rho[i * n + j] <= 1.0))
                throw std::invalid_argument("CorrelationSpec: rho_ij outside [0,1]");
            if (rho[i * n + j] != rho[j * n + i])
                throw std::invalid_argument("CorrelationSpec: matrix not symmetric");
        }
    }
    return CorrelationSpec(Kind::explicit_matrix, n, 0.0, std::move(rho));
}

std::vector<double> CorrelationSpec::rho_matrix() const {
    if (kind_ == Kind::explicit_matrix) return mat_;
    std::vector<double> m(n_ * n_, 1.0);
    for (std::size_t p = 0; p < n_; ++p)
        for (std::size_t q = 0; q < n_; ++q)
            m[p * n_ + q] = std::pow(rho_, static_cast<double>(p > q ? p - q : q - p));
    return m;
}

std::vector<double> CorrelationSpec::materialize() const {
    std::vector<double> c = rho_matrix();
    for (std::size_t i = 0; i < n_ * n_; ++i) c[i] = std::sqrt(c[i]);
    for (std::size_t i = 0; i < n_; ++i) c[i * n_ + i] = 1.0;
    if (!cholesky(c, n_)) throw std::invalid_argument("CorrelationSpec: C is not positive definite");
    return c;
}

// ---- spectrum ---------------------------------------------------------------

std::vector<GammaComponent> weighted_components(const std::vector<GammaComponent>& interferers,
                                                const std::vector<double>& distances_m, double beta) {
    if (interferers.size() != distances_m.size())
        throw std::invalid_argument("weighted_components: length mismatch");
    std::vector<GammaComponent> out;
    out.reserve(interferers.size());
    for (std::size_t i = 0; i < interferers.size(); ++i) {
        if (!(distances_m[i] > 0.0)) throw std::invalid_argument("weighted_components: distance <= 0");
        out.push_back({interferers[i].shape, interferers[i].scale * std::pow(distances_m[i], -beta)});
    }
    return out;
}

EigenSpectrum correlated_spectrum(const std::vector<GammaComponent>& components,
                                  const CorrelationSpec& corr) {
    const std::size_t n = components.size();
    if (n == 0) throw std::invalid_argument("correlated_spectrum: no components");
    if (corr.dimension() != n) throw std::invalid_argument("correlated_spectrum: dimension mismatch");
    for (const auto& c : components) {
        if (!(c.scale > 0.0) || !(c.shape > 0.0))
            throw std::invalid_argument("correlated_spectrum: nonpositive component");
        if (std::fabs(c.shape - components.front().shape) > 1e-12 * std::max(1.0, components.front().shape))
            throw std::invalid_argument("correlated_spectrum: shapes must be equal");
    }

    const std::vector<double> c = corr.materialize();
    std::vector<double> b(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b[i * n + j] = std::sqrt(components[i].scale * components[j].scale) * c[i * n + j];

    std::vector<double> eig = jacobi_eigenvalues(b, n);
    std::sort(eig.begin(), eig.end(), std::greater<double>());

    EigenSpectrum spec;
    spec.values = std::move(eig);
    spec.source_diagonal.reserve(n);
    for (const auto& comp : components) spec.source_diagonal.push_back(comp.scale);

    // internal consistency: positivity, trace, log-determinant
    double trace_src = 0.0, trace_eig = 0.0, logdet_eig = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(spec.values[i] > 0.0)) throw std::runtime_error("correlated_spectrum: nonpositive eigenvalue");
        trace_src += spec.source_diagonal[i];
        trace_eig += spec.values[i];
        logdet_eig += std::log(spec.values[i]);
    }
    if (std::fabs(trace_eig - trace_src) > 1e-9 * std::max(1.0, trace_src))
        throw std::runtime_error("correlated_spectrum: trace not preserved");
    const auto chol = cholesky(c, n);
    double logdet_c = 0.0;
    for (std::size_t i = 0; i < n; ++i) logdet_c += 2.0 * std::log((*chol)[i * n + i]);
    double logdet_d = 0.0;
    for (const auto& comp : components) logdet_d += std::log(comp.scale);
    if (std::fabs(logdet_eig - (logdet_c + logdet_d)) > 1e-9 * std::max(1.0, std::fabs(logdet_c + logdet_d)))
        throw std::runtime_error("correlated_spectrum: determinant not preserved");
    return spec;
}

// ---- sum distribution -------------------------------------------------------

GammaSumDist::GammaSumDist(std::vector<GammaComponent> comps, double rel_tol, std::size_t term_cap)
    : comps_(std::move(comps)), rel_tol_(rel_tol), term_cap_(term_cap) {
    if (comps_.empty()) throw std::invalid_argument("GammaSumDist: no components");
    lambda_min_ = comps_.front().scale;
    for (const auto& c : comps_) {
        if (!(c.shape > 0.0) || !(c.scale > 0.0))
            throw std::invalid_argument("GammaSumDist: nonpositive parameter");
        lambda_min_ = std::min(lambda_min_, c.scale);
        rho_total_ += c.shape;
        mean_ += c.shape * c.scale;
        var_ += c.shape * c.scale * c.scale;
    }
    double logc = 0.0;
    for (const auto& c : comps_) logc += c.shape * std::log(lambda_min_ / c.scale);
    coeff_.push_back(std::exp(logc));
    coeff_partial_ = coeff_.front();
    g_.push_back(0.0);  // placeholder so g_[j] aligns with power index j
    powers_.assign(comps_.size(), 1.0);
}

void GammaSumDist::extend_cache(std::size_t k) const {
    while (coeff_.size() <= k) {
        const std::size_t next = coeff_.size();  // computing coeff_[next]
        while (g_.size() <= next) {
            double gj = 0.0;
            for (std::size_t i = 0; i < comps_.size(); ++i) {
                powers_[i] *= 1.0 - lambda_min_ / comps_[i].scale;
                gj += comps_[i].shape * powers_[i];
            }
            g_.push_back(gj);
        }
        double s = 0.0;
        for (std::size_t j = 1; j <= next; ++j) s += g_[j] * coeff_[next - j];
        coeff_.push_back(s / static_cast<double>(next));
        coeff_partial_ += coeff_.back();
    }
}

double GammaSumDist::cdf(double x) const {
    if (x < 0.0) throw std::domain_error("GammaSumDist::cdf: x < 0");
    if (x == 0.0) return 0.0;
    const double y = x / lambda_min_;

    double p = specialfn::reg_lower_gamma(rho_total_, y);
    // q_k = y^{rho+k} e^{-y} / Gamma(rho+k+1); P(rho+k+1, y) = P(rho+k, y) - q_k
    double q = std::exp(rho_total_ * std::log(y) - y - std::lgamma(rho_total_ + 1.0));

    double acc = 0.0;
    double csum = 0.0;
    for (std::size_t k = 0;; ++k) {
        if (k >= term_cap_) throw NonConvergence("GammaSumDist::cdf: term cap exceeded");
        extend_cache(k);
        acc += coeff_[k] * p;
        csum += coeff_[k];
        const double p_next = std::max(0.0, p - q);
        const double bound = std::max(0.0, 1.0 - csum) * p_next;
        if (bound <= rel_tol_ * std::max(acc, 1e-300) || p_next <= 0.0) break;
        p = p_next;
        q *= y / (rho_total_ + static_cast<double>(k) + 1.0);
    }
    return std::min(1.0, std::max(0.0, acc));
}

double sum_cdf(const std::vector<GammaComponent>& comps, double x, double rel_tol) {
    return GammaSumDist(comps, rel_tol).cdf(x);
}

// ---- sampling ---------------------------------------------------------------

double sample_sum(const std::vector<GammaComponent>& comps, RngStream& rng) {
    double s = 0.0;
    for (const auto& c : comps) s += c.scale * rng.gamma(c.shape);
    return s;
}

double sample_sum(const EigenSpectrum& spectrum, double common_shape, RngStream& rng) {
    double s = 0.0;
    for (double w : spectrum.values) s += w * rng.gamma(common_shape);
    return s;
}

}  // namespace cellcov::gammasum
