#include "cellcov/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "cellcov/evaluate.hpp"
#include "cellcov/ordering.hpp"
#include "cellcov/rng.hpp"
#include "cellcov/scenario.hpp"

namespace cellcov::verify {

namespace {

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

double uniform(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.u01(); }

double log_uniform(RngStream& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

sim::SimScenario hex_scenario(double alpha_u, double alpha_c, double rho, double sigma_dB = 0.0,
                              double rho_shadow = 0.0) {
    sim::SimScenario s;
    s.geometry = sim::hex_layout(866.0, 3.76, 35.0, 30.0);
    std::vector<gammasum::GammaComponent> intf(18, {alpha_c, 1.0 / alpha_c});
    s.fading = coverage::FadingSpec::make({alpha_u, 1.0 / alpha_u}, std::move(intf));
    s.corr = gammasum::CorrelationSpec::exponential(18, rho);
    s.sigma_dB = sigma_dB;
    s.rho_shadow = rho_shadow;
    return s;
}

// reduced three-interferer layout (one BS per hexagonal ring)
sim::SimScenario toy3_scenario(double alpha_u, double sigma_dB = 0.0) {
    sim::SimScenario s;
    s.geometry = sim::fixed_geometry({1732.0, 1732.0 * std::sqrt(3.0), 3464.0}, 3.76);
    s.fading = coverage::FadingSpec::make({alpha_u, 1.0 / alpha_u},
                                          {{0.5, 2.0}, {1.0, 1.0}, {2.0, 0.5}});
    s.sigma_dB = sigma_dB;
    return s;
}

// ---- criterion 1: Theorem 1 on the Rayleigh-user closed forms --------------

CheckResult c1_theorem1_closed_form(std::uint64_t seed) {
    RngStream rng(seed, 101);
    double min_slack = 1e300;
    for (int it = 0; it < 1000; ++it) {
        const std::size_t n = 2 + static_cast<std::size_t>(uniform(rng, 0.0, 17.0));
        const double alpha_c = uniform(rng, 0.5, 3.0);
        const double rho = uniform(rng, 0.0, 0.99);
        const double k = log_uniform(rng, 1e-3, 1e3);
        std::vector<gammasum::GammaComponent> comps(n);
        for (auto& c : comps) c = {alpha_c, log_uniform(rng, 1e-3, 1e3)};
        const auto spec = gammasum::correlated_spectrum(comps, gammasum::CorrelationSpec::exponential(n, rho));
        const std::vector<double> a(n, alpha_c);
        std::vector<double> lam(n);
        for (std::size_t i = 0; i < n; ++i) lam[i] = comps[i].scale;
        const double pc_corr = ordering::schur_product(k, spec.values, a);
        const double pc_inid = ordering::schur_product(k, lam, a);
        min_slack = std::min(min_slack, pc_corr - pc_inid);
    }
    CheckResult r;
    r.name = "c1-theorem1-rayleigh-closed-form";
    r.pass = min_slack >= -1e-12;
    r.detail = fmt("1000 scenarios, min(corr - inid) = %.3g (>= -1e-12)", min_slack);
    return r;
}

// ---- criterion 2: Theorem 3, alpha_u <= 1, analytic path --------------------

CheckResult c2_theorem3_analytic(std::uint64_t seed) {
    RngStream rng(seed, 102);
    double min_slack = 1e300;
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + static_cast<std::size_t>(uniform(rng, 0.0, 2.999));
        const double alpha_u = uniform(rng, 0.5, 1.0);
        const double alpha_c = uniform(rng, 0.5, 3.0);
        const double rho = uniform(rng, 0.0, 0.99);
        const double k = log_uniform(rng, 1e-3, 1e3);
        std::vector<gammasum::GammaComponent> comps(n);
        for (auto& c : comps) c = {alpha_c, log_uniform(rng, 1e-3, 1e3)};
        const auto spec = gammasum::correlated_spectrum(comps, gammasum::CorrelationSpec::exponential(n, rho));
        const double pc_inid = coverage::coverage_weighted_inid(alpha_u, comps, k).value;
        const double pc_corr =
            coverage::coverage_weighted_correlated(alpha_u, alpha_c, spec, k).value;
        min_slack = std::min(min_slack, pc_corr - pc_inid);
    }
    CheckResult r;
    r.name = "c2-theorem3-analytic-au-le-1";
    r.pass = min_slack >= -1e-8;
    r.detail = fmt("200 scenarios (N<=4), min(corr - inid) = %.3g (>= -1e-8)", min_slack);
    return r;
}

// ---- criterion 3: Theorem 3, alpha_u <= 1, paired Monte Carlo, N = 18 -------

CheckResult c3_theorem3_mc(std::uint64_t seed) {
    RngStream rng(seed, 103);
    double worst_z = 1e300;
    for (int it = 0; it < 20; ++it) {
        const double alpha_u = uniform(rng, 0.5, 1.0);
        const double alpha_c = uniform(rng, 0.5, 3.0);
        const double rho = uniform(rng, 0.0, 0.99);
        const double r_user = uniform(rng, 50.0, 990.0);
        const double T = std::pow(10.0, uniform(rng, -10.0, 10.0) / 10.0);
        const auto scn = hex_scenario(alpha_u, alpha_c, rho);
        const auto res = sim::paired_compare(scn, r_user, sim::Metric::coverage(T), 100000,
                                             seed ^ (0xc3000 + it));
        const double z = res.gap.std_err > 0.0 ? res.gap.mean / res.gap.std_err
                                               : (res.gap.mean >= 0.0 ? 1e300 : -1e300);
        worst_z = std::min(worst_z, z);
    }
    CheckResult r;
    r.name = "c3-theorem3-paired-mc-n18";
    r.pass = worst_z >= -3.0;
    r.detail = fmt("20 scenarios x 1e5 paired trials, min gap z-score = %.2f (>= -3)", worst_z);
    return r;
}

// ---- criterion 4: alpha_u > 1 counterexample fixtures ----------------------

CheckResult c4_fixture(const std::string& fixture_dir, const std::string& file, bool expect_corr_higher,
                       std::uint64_t seed) {
    CheckResult r;
    r.name = "c4-fixture-" + file;
    try {
        const auto resolved = cli::resolve(cli::load_scenario(fixture_dir + "/" + file));
        const double T = resolved.T_linear.at(0);
        const double r_user = resolved.file.r.at(0);
        const auto ci = eval::eval_coverage(resolved.sim, r_user, T, sim::Variant::inid());
        const auto cc = eval::eval_coverage(resolved.sim, r_user, T, sim::Variant::corr());
        const double analytic_gap = cc.value - ci.value;
        const auto mc = sim::paired_compare(resolved.sim, r_user, sim::Metric::coverage(T),
                                            resolved.file.trials, seed ^ resolved.file.seed);
        const bool sign_ok = expect_corr_higher ? analytic_gap > 0.0 : analytic_gap < 0.0;
        const bool mc_matches = std::fabs(mc.gap.mean - analytic_gap) <= 3.0 * mc.gap.std_err;
        const bool mc_sign = expect_corr_higher ? mc.gap.mean > 3.0 * mc.gap.std_err
                                                : mc.gap.mean < -3.0 * mc.gap.std_err;
        r.pass = sign_ok && mc_matches && mc_sign;
        r.detail = fmt("analytic inid=%.5f corr=%.5f gap=%+.5f; MC gap=%+.5f+-%.5f", ci.value,
                       cc.value, analytic_gap, mc.gap.mean, mc.gap.std_err);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    return r;
}

// ---- criterion 5: rate dominance -------------------------------------------

CheckResult c5_rate_dominance(std::uint64_t seed) {
    RngStream rng(seed, 105);
    double worst_z = 1e300, worst_analytic = 1e300;
    int analytic_checked = 0;
    for (int it = 0; it < 50; ++it) {
        const double alpha_u = uniform(rng, 0.5, 3.0);
        const double alpha_c = uniform(rng, 0.5, 3.0);
        const double rho = uniform(rng, 0.0, 0.99);
        const double r_user = uniform(rng, 50.0, 990.0);
        const auto scn = hex_scenario(alpha_u, alpha_c, rho);
        const auto res =
            sim::paired_compare(scn, r_user, sim::Metric::rate(), 100000, seed ^ (0xc5000 + it));
        const double z = res.gap.std_err > 0.0 ? res.gap.mean / res.gap.std_err
                                               : (res.gap.mean >= 0.0 ? 1e300 : -1e300);
        worst_z = std::min(worst_z, z);
        if (alpha_u <= 1.0) {
            const double ri = eval::eval_rate(scn, r_user, sim::Variant::inid(), 1e-8).value;
            const double rc = eval::eval_rate(scn, r_user, sim::Variant::corr(), 1e-8).value;
            worst_analytic = std::min(worst_analytic, rc - ri);
            ++analytic_checked;
        }
    }
    CheckResult r;
    r.name = "c5-rate-dominance";
    r.pass = worst_z >= -3.0 && worst_analytic >= -1e-7;
    r.detail = fmt("50 paired-MC scenarios, min z = %.2f (>= -3); %d analytic pairs, min gap = %.3g (>= -1e-7)",
                   worst_z, analytic_checked, worst_analytic);
    return r;
}

// ---- criterion 6: Schur-Horn -----------------------------------------------

CheckResult c6_schur_horn(std::uint64_t seed) {
    RngStream rng(seed, 106);
    double min_slack = 1e300, max_gap = 0.0;
    bool all_hold = true;
    for (int it = 0; it < 1000; ++it) {
        const std::size_t n = 2 + static_cast<std::size_t>(uniform(rng, 0.0, 17.0));
        const double rho = uniform(rng, 0.0, 0.99);
        std::vector<gammasum::GammaComponent> comps(n);
        for (auto& c : comps) c = {1.0, log_uniform(rng, 1e-3, 1e3)};
        const auto spec = gammasum::correlated_spectrum(comps, gammasum::CorrelationSpec::exponential(n, rho));
        const auto v = ordering::majorizes(spec.values, spec.source_diagonal, 1e-9);
        all_hold = all_hold && v.holds;
        for (double s : v.partial_sum_slacks) min_slack = std::min(min_slack, s);
        max_gap = std::max(max_gap, std::fabs(v.total_sum_gap));
    }
    CheckResult r;
    r.name = "c6-schur-horn";
    r.pass = all_hold && min_slack >= -1e-9 && max_gap <= 1e-9;
    r.detail = fmt("1000 matrices, min prefix slack = %.3g (>= -1e-9), max |total gap| = %.3g (<= 1e-9)",
                   min_slack, max_gap);
    return r;
}

// ---- criterion 7: Hessian positive semidefiniteness --------------------------

CheckResult c7_hessian(std::uint64_t seed) {
    RngStream rng(seed, 107);
    double min_eig = 1e300, max_gap = 0.0;
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 7.999));
        const double k = log_uniform(rng, 0.1, 10.0);
        std::vector<double> x(n), a(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = log_uniform(rng, 0.1, 3.0);
            a[i] = uniform(rng, 0.5, 3.0);
        }
        const auto h = ordering::hessian_psd_check(k, x, a, 1e-4);
        min_eig = std::min(min_eig, h.min_eigenvalue);
        max_gap = std::max(max_gap, h.analytic_gap);
    }
    CheckResult r;
    r.name = "c7-hessian-psd";
    r.pass = min_eig >= -1e-10 && max_gap <= 1e-5;
    r.detail = fmt("200 points (n<=8), min eigenvalue = %.3g (>= -1e-10), max FD gap = %.3g (<= 1e-5)",
                   min_eig, max_gap);
    return r;
}

// ---- criterion 8: analytic vs Monte Carlo oracle grid ------------------------

CheckResult c8_oracle_grid(std::uint64_t seed) {
    double worst_z = 0.0, max_stderr = 0.0;
    bool pass = true;
    std::string worst;
    int cell = 0;
    for (double alpha_u : {0.5, 1.0, 2.0})
        for (double t_db : {-5.0, 0.0, 5.0})
            for (double r_user : {300.0, 600.0, 900.0}) {
                const double T = std::pow(10.0, t_db / 10.0);
                const auto scn = toy3_scenario(alpha_u);
                const auto ana = eval::eval_coverage(scn, r_user, T, sim::Variant::inid());
                const auto mc = sim::simulate(scn, r_user, sim::Metric::coverage(T),
                                              sim::Variant::inid(), 1000000, seed ^ (0xc800 + cell));
                const double z = mc.std_err > 0.0 ? (mc.mean - ana.value) / mc.std_err : 0.0;
                max_stderr = std::max(max_stderr, mc.std_err);
                if (std::fabs(z) > std::fabs(worst_z)) {
                    worst_z = z;
                    worst = fmt("au=%.1f T=%+.0fdB r=%.0f", alpha_u, t_db, r_user);
                }
                if (std::fabs(z) > 3.0) pass = false;
                ++cell;
            }
    CheckResult r;
    r.name = "c8-analytic-vs-mc-grid";
    r.pass = pass && max_stderr < 6e-4;
    r.detail = fmt("27 cells x 1e6 trials, worst |z| = %.2f at %s (<= 3), max stderr = %.2g", worst_z,
                   worst.c_str(), max_stderr);
    return r;
}

// ---- criterion 9: closed-form rate checks ------------------------------------

CheckResult c9_rate_closed_form(std::uint64_t) {
    double max_err = 0.0;
    for (double c : {std::exp(-1.0), 1.0, 2.0}) {
        const auto rr = rate::avg_rate([&](double T) {
            const std::vector<double> al{1.0}, u{c * T};
            return coverage::coverage_core(1.0, al, u);
        });
        const double expected = std::fabs(c - 1.0) < 1e-12 ? 1.0 : std::log(1.0 / c) / (1.0 - c);
        max_err = std::max(max_err, std::fabs(rr.value - expected));
    }
    CheckResult r;
    r.name = "c9-rate-closed-form";
    r.pass = max_err <= 1e-6;
    r.detail = fmt("c in {1/e, 1, 2}: max |rate - ln(1/c)/(1-c)| = %.3g (<= 1e-6)", max_err);
    return r;
}

// ---- criterion 10: shadowing moment-matching consistency ----------------------

CheckResult c10_shadowing(std::uint64_t seed) {
    double max_abs = 0.0;
    int idx = 0;
    for (double sigma : {3.0, 6.0, 10.0}) {
        const auto scn = toy3_scenario(1.0, sigma);
        const auto ana = eval::eval_coverage(scn, 600.0, 1.0, sim::Variant::shadowed_inid());
        const auto mc = sim::simulate(scn, 600.0, sim::Metric::coverage(1.0),
                                      sim::Variant::shadowed_inid(), 1000000, seed ^ (0xca00 + idx));
        max_abs = std::max(max_abs, std::fabs(ana.value - mc.mean));
        ++idx;
    }
    CheckResult r;
    r.name = "c10-shadowing-moment-match";
    r.pass = max_abs <= 0.02;
    r.detail = fmt("sigma_dB in {3,6,10}, N=3, 1e6 composite trials: max |analytic - MC| = %.4f (<= 0.02)",
                   max_abs);
    return r;
}

// ---- criterion 11: figure anchors ---------------------------------------------

void push_soft(std::vector<CheckResult>& out, const std::string& name, double got, double paper) {
    CheckResult r;
    r.name = name;
    r.hard = false;
    r.pass = std::fabs(got - paper) <= 0.03;
    r.detail = fmt("value %.4f vs paper %.2f, |dev| = %.4f (scored at 0.03)", got, paper,
                   std::fabs(got - paper));
    out.push_back(r);
}

}  // namespace

std::vector<CheckResult> theorems_suite(std::uint64_t seed, const std::string& fixture_dir) {
    std::vector<CheckResult> out;
    out.push_back(c1_theorem1_closed_form(seed));
    out.push_back(c2_theorem3_analytic(seed));
    out.push_back(c3_theorem3_mc(seed));
    out.push_back(c4_fixture(fixture_dir, "alpha_gt1_corr_higher.scenario", true, seed));
    out.push_back(c4_fixture(fixture_dir, "alpha_gt1_inid_higher.scenario", false, seed));
    out.push_back(c5_rate_dominance(seed));
    out.push_back(c6_schur_horn(seed));
    out.push_back(c7_hessian(seed));
    return out;
}

std::vector<CheckResult> oracles_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(c8_oracle_grid(seed));
    out.push_back(c9_rate_closed_form(seed));
    out.push_back(c10_shadowing(seed));
    return out;
}

std::vector<CheckResult> figures_suite(std::uint64_t) {
    // Documented assumptions for under-specified figure parameters:
    // beta = 3.76, corner ray, 2R = 1732 m, unit-mean channels (pinned);
    // coverage anchors at T = 4.5 dB with rho = 0.81; rate anchors at
    // rho = 0.98; shadowed anchors at sigma_dB = 8, rho_shadow = 0.5.
    std::vector<CheckResult> out;
    const double T_fig = std::pow(10.0, 4.5 / 10.0);

    {
        const auto s = hex_scenario(0.5, 0.5, 0.81);
        const double ci = eval::eval_coverage(s, 900.0, T_fig, sim::Variant::inid()).value;
        const double cc = eval::eval_coverage(s, 900.0, T_fig, sim::Variant::corr()).value;
        CheckResult r;
        r.name = "fig-coverage-au0.5-ordering";
        r.pass = cc > ci;
        r.detail = fmt("r=900, T=4.5dB, rho=0.81: corr %.4f > inid %.4f (paper 0.22 > 0.12)", cc, ci);
        out.push_back(r);
        push_soft(out, "fig-coverage-au0.5-inid-abs", ci, 0.12);
        push_soft(out, "fig-coverage-au0.5-corr-abs", cc, 0.22);
    }
    {
        const auto s = hex_scenario(1.0, 1.0, 0.81);
        const double ci = eval::eval_coverage(s, 900.0, T_fig, sim::Variant::inid()).value;
        const double cc = eval::eval_coverage(s, 900.0, T_fig, sim::Variant::corr()).value;
        CheckResult r;
        r.name = "fig-coverage-au1-ordering";
        r.pass = cc > ci;
        r.detail = fmt("r=900, T=4.5dB, rho=0.81: corr %.4f > inid %.4f (paper 0.12 > 0.07)", cc, ci);
        out.push_back(r);
        push_soft(out, "fig-coverage-au1-inid-abs", ci, 0.07);
        push_soft(out, "fig-coverage-au1-corr-abs", cc, 0.12);
    }
    {
        const auto s = hex_scenario(1.0, 1.0, 0.98);
        const double rc = eval::eval_rate(s, 600.0, sim::Variant::corr()).value;
        const double rs = eval::eval_rate(s, 600.0, sim::Variant::simo()).value;
        const double ri = eval::eval_rate(s, 600.0, sim::Variant::inid()).value;
        CheckResult r;
        r.name = "fig-rate-ordering";
        r.pass = rc >= rs && rs >= ri;
        r.detail = fmt("r=600, rho=0.98: corr %.4f >= simo %.4f >= inid %.4f (paper 1.41 > 1.28 > 1.09)",
                       rc, rs, ri);
        out.push_back(r);
        push_soft(out, "fig-rate-corr98-abs", rc, 1.41);
        push_soft(out, "fig-rate-simo-abs", rs, 1.28);
        push_soft(out, "fig-rate-inid-abs", ri, 1.09);
    }
    {
        const auto s = hex_scenario(1.0, 1.0, 0.98, 8.0, 0.5);
        const double rc = eval::eval_rate(s, 700.0, sim::Variant::shadowed_corr()).value;
        const double rs = eval::eval_rate(s, 700.0, sim::Variant::shadowed_simo()).value;
        const double ri = eval::eval_rate(s, 700.0, sim::Variant::shadowed_inid()).value;
        CheckResult r;
        r.name = "fig-shadowed-rate-ordering";
        r.pass = rc >= rs && rs >= ri;
        r.detail = fmt(
            "r=700, rho=0.98, sigma=8dB, rho_s=0.5: corr %.4f >= simo %.4f >= inid %.4f (paper 1.25 > 0.86 > 0.71)",
            rc, rs, ri);
        out.push_back(r);
        push_soft(out, "fig-shadowed-rate-corr98-abs", rc, 1.25);
        push_soft(out, "fig-shadowed-rate-simo-abs", rs, 0.86);
        push_soft(out, "fig-shadowed-rate-inid-abs", ri, 0.71);
    }
    return out;
}

int report(const std::vector<CheckResult>& results) {
    int hard_failures = 0;
    for (const auto& r : results) {
        const char* tag;
        if (r.hard) {
            tag = r.pass ? "PASS" : "FAIL";
            if (!r.pass) ++hard_failures;
        } else {
            tag = r.pass ? "SCORE[hit] " : "SCORE[miss]";
        }
        std::printf("%s  %-36s %s\n", tag, r.name.c_str(), r.detail.c_str());
    }
    std::fflush(stdout);
    return hard_failures;
}

}  // namespace cellcov::verify
