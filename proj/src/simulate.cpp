#include "cellcov/simulate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cellcov/rng.hpp"

namespace cellcov::sim {

Variant Variant::parse(const std::string& name) {
    if (name == "inid") return inid();
    if (name == "correlated") return corr();
    if (name == "shadowed-inid") return shadowed_inid();
    if (name == "shadowed-correlated") return shadowed_corr();
    if (name == "simo-cancel") return simo();
    if (name == "shadowed-simo") return shadowed_simo();
    throw std::invalid_argument("unknown variant: " + name);
}

std::string Variant::name() const {
    if (simo_cancel) return shadowed ? "shadowed-simo" : "simo-cancel";
    if (correlated) return shadowed ? "shadowed-correlated" : "correlated";
    return shadowed ? "shadowed-inid" : "inid";
}

namespace {

constexpr std::uint64_t kBlockSize = 8192;

struct Accum {
    double sum = 0.0, sum_c = 0.0;    // Kahan-compensated sum
    double sumsq = 0.0, sumsq_c = 0.0;

    void add(double v) {
        double y = v - sum_c;
        double t = sum + y;
        sum_c = (t - sum) - y;
        sum = t;
        y = v * v - sumsq_c;
        t = sumsq + y;
        sumsq_c = (t - sumsq) - y;
        sumsq = t;
    }
    void merge(const Accum& o) {
        add_pair(o.sum, o.sumsq);
    }
    void add_pair(double s, double sq) {
        double y = s - sum_c;
        double t = sum + y;
        sum_c = (t - sum) - y;
        sum = t;
        y = sq - sumsq_c;
        t = sumsq + y;
        sumsq_c = (t - sumsq) - y;
        sumsq = t;
    }
};

SimEstimate finalize(const Accum& acc, std::uint64_t trials, std::uint64_t seed,
                     const std::string& variant) {
    SimEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.variant = variant;
    est.mean = acc.sum / static_cast<double>(trials);
    double var = 0.0;
    if (trials > 1)
        var = std::max(0.0, (acc.sumsq - static_cast<double>(trials) * est.mean * est.mean) /
                                static_cast<double>(trials - 1));
    est.std_err = std::sqrt(var / static_cast<double>(trials));
    return est;
}

// Runs `trials` trials split into blocks; TrialFn(rng, out[k]) fills K metric
// values per trial. Per-block accumulators are merged in block-index order.
template <std::size_t K, class TrialFn>
std::array<Accum, K> run_blocked(std::uint64_t trials, std::uint64_t seed, int threads,
                                 const TrialFn& trial) {
    if (trials == 0) throw std::invalid_argument("simulate: trials must be >= 1");
    const std::uint64_t blocks = (trials + kBlockSize - 1) / kBlockSize;
    std::vector<std::array<Accum, K>> partial(blocks);

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    nthreads = static_cast<int>(std::min<std::uint64_t>(nthreads, blocks));

    std::atomic<std::uint64_t> next{0};
    const auto worker = [&]() {
        std::array<double, K> vals{};
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= blocks) break;
            RngStream rng(seed, b);
            const std::uint64_t lo = b * kBlockSize;
            const std::uint64_t hi = std::min(trials, lo + kBlockSize);
            for (std::uint64_t t = lo; t < hi; ++t) {
                trial(rng, vals);
                for (std::size_t k = 0; k < K; ++k) partial[b][k].add(vals[k]);
            }
        }
    };

    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::array<Accum, K> out{};
    for (std::uint64_t b = 0; b < blocks; ++b)
        for (std::size_t k = 0; k < K; ++k) out[k].merge(partial[b][k]);
    return out;
}

struct TrialSetup {
    double alpha_u, lambda_u;
    double sigma = 0.0;  // lognormal log-sd (linear), 0 when unshadowed
    std::vector<double> shapes;       // per-interferer gamma shapes to draw
    std::vector<double> weights;      // matching scale weights
    bool interferer_lognormals = false;  // multiply each term by its own lognormal
    double r_pow_beta;
};

// Resolve the per-trial draw recipe for one variant at radius r.
TrialSetup make_setup(const SimScenario& scn, double r, Variant v) {
    scn.fading.validate();
    TrialSetup s;
    s.alpha_u = scn.fading.user.shape;
    s.lambda_u = scn.fading.user.scale;
    s.r_pow_beta = std::pow(r, -scn.geometry.beta);
    if (v.shadowed) {
        if (!(scn.sigma_dB > 0.0))
            throw std::invalid_argument("simulate: shadowed variant needs sigma_dB > 0");
        s.sigma = scn.sigma_dB / 8.686;
    }

    const std::vector<double> dist = interferer_distances(scn.geometry, r);
    std::vector<gammasum::GammaComponent> weighted =
        gammasum::weighted_components(scn.fading.interferers, dist, scn.geometry.beta);

    if (v.simo_cancel) {
        if (v.correlated)
            throw std::invalid_argument("simulate: simo-cancel is defined for the i.n.i.d. base");
        // drop the interferer with the largest mean received power; ties keep
        // the smallest index
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
        if (weighted.empty()) throw std::invalid_argument("simulate: no interferers left after cancel");
    }

    if (!v.correlated) {
        for (const auto& c : weighted) {
            s.shapes.push_back(c.shape);
            s.weights.push_back(c.scale);
        }
        s.interferer_lognormals = v.shadowed;  // true composite model per link
        return s;
    }

    if (!scn.corr) throw std::invalid_argument("simulate: correlated variant needs a correlation spec");
    if (!scn.fading.common_shape)
        throw std::invalid_argument("simulate: correlated variant needs equal interferer shapes");

    if (!v.shadowed) {
        const gammasum::EigenSpectrum spec = gammasum::correlated_spectrum(weighted, *scn.corr);
        s.shapes.assign(spec.values.size(), *scn.fading.common_shape);
        s.weights = spec.values;
        return s;
    }

    // shadowed-correlated: spectral identity on the moment-matched model
    // A^l = D^l C^l (the composite correlated law is only defined through it)
    std::vector<gammasum::GammaComponent> matched;
    matched.reserve(weighted.size());
    for (const auto& c : weighted) matched.push_back(coverage::shadow_moment_match(c, scn.sigma_dB));
    const std::size_t n = scn.corr->dimension();
    std::vector<double> rho = scn.corr->rho_matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                rho[i * n + j] = coverage::shadow_corr_coeff(rho[i * n + j], scn.rho_shadow,
                                                             *scn.fading.common_shape, scn.sigma_dB);
    const auto corr_l = gammasum::CorrelationSpec::explicit_matrix(std::move(rho), n);
    const gammasum::EigenSpectrum spec = gammasum::correlated_spectrum(matched, corr_l);
    s.shapes.assign(spec.values.size(), matched.front().shape);
    s.weights = spec.values;
    return s;
}

double trial_metric(const Metric& metric, double g, double interference, double r_pow_beta) {
    const double eta = g * r_pow_beta / interference;
    return metric.is_rate ? std::log1p(eta) : (eta > metric.T ? 1.0 : 0.0);
}

}  // namespace

SimEstimate simulate(const SimScenario& scn, double r, Metric metric, Variant variant,
                     std::uint64_t trials, std::uint64_t seed, int threads) {
    // with angular averaging the setup depends on the per-trial ray
    const bool avg = scn.average_angles && !scn.geometry.fixed_distances;
    TrialSetup setup = make_setup(scn, r, variant);

    const auto trial = [&](RngStream& rng, std::array<double, 1>& out) {
        const TrialSetup* s = &setup;
        TrialSetup local;
        if (avg) {
            const double deg = rng.u01() * 360.0;
            SimScenario rotated = scn;
            const double th = deg * 3.14159265358979323846 / 180.0;
            rotated.geometry.user_direction = {std::cos(th), std::sin(th)};
            local = make_setup(rotated, r, variant);
            s = &local;
        }
        double g = s->lambda_u * rng.gamma(s->alpha_u);
        if (s->sigma > 0.0) g *= rng.lognormal(s->sigma);
        double interference = 0.0;
        for (std::size_t i = 0; i < s->shapes.size(); ++i) {
            double h = s->weights[i] * rng.gamma(s->shapes[i]);
            if (s->interferer_lognormals) h *= rng.lognormal(s->sigma);
            interference += h;
        }
        out[0] = trial_metric(metric, g, interference, s->r_pow_beta);
    };

    const auto acc = run_blocked<1>(trials, seed, threads, trial);
    return finalize(acc[0], trials, seed, variant.name());
}

PairedResult paired_compare(const SimScenario& scn, double r, Metric metric,
                            std::uint64_t trials, std::uint64_t seed, int threads) {
    if (!scn.fading.common_shape)
        throw std::invalid_argument("paired_compare: equal interferer shapes required");
    const TrialSetup si = make_setup(scn, r, Variant::inid());
    const TrialSetup sc = make_setup(scn, r, Variant::corr());
    const double alpha_c = *scn.fading.common_shape;

    const auto trial = [&](RngStream& rng, std::array<double, 3>& out) {
        const double g = si.lambda_u * rng.gamma(si.alpha_u);
        double ii = 0.0, ic = 0.0;
        for (std::size_t i = 0; i < si.weights.size(); ++i) {
            const double gi = rng.gamma(alpha_c);
            ii += si.weights[i] * gi;
            ic += sc.weights[i] * gi;
        }
        out[0] = trial_metric(metric, g, ii, si.r_pow_beta);
        out[1] = trial_metric(metric, g, ic, si.r_pow_beta);
        out[2] = out[1] - out[0];
    };

    const auto acc = run_blocked<3>(trials, seed, threads, trial);
    PairedResult res;
    res.inid = finalize(acc[0], trials, seed, "inid");
    res.corr = finalize(acc[1], trials, seed, "correlated");
    res.gap = finalize(acc[2], trials, seed, "paired-gap");
    return res;
}

}  // namespace cellcov::sim
