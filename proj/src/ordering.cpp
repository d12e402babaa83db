#include "cellcov/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "cellcov/linalg.hpp"
#include "cellcov/rng.hpp"
#include "cellcov/specialfn.hpp"

namespace cellcov::ordering {

MajorizationVerdict majorizes(std::span<const double> a, std::span<const double> b, double tol) {
    if (a.size() != b.size()) throw std::invalid_argument("majorizes: length mismatch");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    MajorizationVerdict v;
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 0; k + 1 < sa.size(); ++k) {
        pa += sa[k];
        pb += sb[k];
        v.partial_sum_slacks.push_back(pb - pa);
    }
    pa += sa.empty() ? 0.0 : sa.back();
    pb += sb.empty() ? 0.0 : sb.back();
    v.total_sum_gap = pb - pa;

    const double scale = std::max(1.0, std::max(std::fabs(pa), std::fabs(pb)));
    v.holds = std::fabs(v.total_sum_gap) <= tol * scale;
    for (double s : v.partial_sum_slacks)
        if (s < -tol * scale) v.holds = false;
    return v;
}

double schur_product(double k, std::span<const double> x, std::span<const double> a) {
    if (x.size() != a.size()) throw std::invalid_argument("schur_product: length mismatch");
    double lg = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) lg -= a[i] * std::log1p(k * x[i]);
    return std::exp(lg);
}

HessianCheck hessian_psd_check(double k, std::span<const double> x, std::span<const double> a,
                               double fd_step) {
    const std::size_t n = x.size();
    if (a.size() != n || n == 0) throw std::invalid_argument("hessian_psd_check: bad arguments");

    const double pre = k * k * schur_product(k, x, a);
    std::vector<double> h(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double di = 1.0 + k * x[i];
        h[i * n + i] = pre * a[i] * (a[i] + 1.0) / (di * di);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dj = 1.0 + k * x[j];
            h[i * n + j] = h[j * n + i] = pre * a[i] * a[j] / (di * dj);
        }
    }

    // central finite differences with per-coordinate steps
    std::vector<double> p(x.begin(), x.end());
    const auto f = [&](const std::vector<double>& v) { return schur_product(k, v, a); };
    std::vector<double> hfd(n * n);
    const double f0 = f(p);
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = fd_step * std::max(1.0, std::fabs(x[i]));
        p[i] = x[i] + hi;
        const double fp = f(p);
        p[i] = x[i] - hi;
        const double fm = f(p);
        p[i] = x[i];
        hfd[i * n + i] = (fp - 2.0 * f0 + fm) / (hi * hi);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double hj = fd_step * std::max(1.0, std::fabs(x[j]));
            p[i] = x[i] + hi;
            p[j] = x[j] + hj;
            const double fpp = f(p);
            p[j] = x[j] - hj;
            const double fpm = f(p);
            p[i] = x[i] - hi;
            const double fmm = f(p);
            p[j] = x[j] + hj;
            const double fmp = f(p);
            p[i] = x[i];
            p[j] = x[j];
            hfd[i * n + j] = hfd[j * n + i] = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
        }
    }

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) {
        num += (hfd[i] - h[i]) * (hfd[i] - h[i]);
        den += h[i] * h[i];
    }

    HessianCheck out;
    out.analytic_gap = std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
    const std::vector<double> eig = jacobi_eigenvalues(h, n);
    out.min_eigenvalue = *std::min_element(eig.begin(), eig.end());
    return out;
}

namespace {

double phi_eval(PhiFamily phi, double s, double x) {
    switch (phi) {
        case PhiFamily::log1p_ratio: return std::log1p(s / x);
        case PhiFamily::quadratic: return x * x;
        case PhiFamily::exponential: return std::exp(-x);
    }
    return 0.0;
}

}  // namespace

ConvexOrderResult convex_order_test(std::span<const double> weights_a,
                                    std::span<const double> weights_b, double shape,
                                    PhiFamily phi, double phi_s, std::uint64_t trials,
                                    std::uint64_t seed) {
    if (weights_a.size() != weights_b.size() || weights_a.empty())
        throw std::invalid_argument("convex_order_test: weight length mismatch");
    if (!majorizes(weights_b, weights_a).holds)
        throw std::invalid_argument("convex_order_test: weights_b must majorize weights_a");
    if (trials == 0) throw std::invalid_argument("convex_order_test: trials must be >= 1");

    RngStream rng(seed);
    const std::size_t n = weights_a.size();
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double xa = 0.0, xb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = rng.gamma(shape);
            xa += weights_a[i] * g;
            xb += weights_b[i] * g;
        }
        const double d = phi_eval(phi, phi_s, xb) - phi_eval(phi, phi_s, xa);
        sum += d;
        sumsq += d * d;
    }
    const double mean = sum / static_cast<double>(trials);
    double var = 0.0;
    if (trials > 1)
        var = std::max(0.0, (sumsq - static_cast<double>(trials) * mean * mean) /
                                static_cast<double>(trials - 1));
    return {mean, std::sqrt(var / static_cast<double>(trials))};
}

namespace {

// partitions of m in the paper's order: (m), ..., (1,...,1)
std::vector<std::vector<int>> partitions_of(int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(m, m);
    return out;
}

// enumerate compositions of m over n slots, accumulating the monomial value
// for both argument vectors into the per-partition sums
void accumulate_layer(int m, std::span<const double> xi, std::span<const double> xc,
                      const std::map<std::vector<int>, std::size_t>& index,
                      std::vector<double>& inid_sums, std::vector<double>& corr_sums) {
    const std::size_t n = xi.size();
    std::vector<int> expo(n, 0);
    std::vector<int> nz;
    const std::function<void(std::size_t, int, double, double)> rec =
        [&](std::size_t slot, int rest, double pi, double pc) {
            if (rest == 0) {
                nz.clear();
                for (int e : expo)
                    if (e > 0) nz.push_back(e);
                std::sort(nz.begin(), nz.end(), std::greater<int>());
                const std::size_t idx = index.at(nz);
                inid_sums[idx] += pi;
                corr_sums[idx] += pc;
                return;
            }
            if (slot == n) return;
            double powi = 1.0, powc = 1.0;
            for (int e = 0; e <= rest; ++e) {
                expo[slot] = e;
                rec(slot + 1, rest - e, pi * powi, pc * powc);
                powi *= xi[slot];
                powc *= xc[slot];
            }
            expo[slot] = 0;
        };
    rec(0, m, 1.0, 1.0);
}

}  // namespace

SeriesComparison fd_series_comparison(double alpha_u, double alpha_c,
                                      std::span<const double> u_inid,
                                      std::span<const double> u_corr, int order_m) {
    if (u_inid.size() != u_corr.size() || u_inid.empty())
        throw std::invalid_argument("fd_series_comparison: length mismatch");
    if (order_m < 1 || order_m > 6)
        throw std::invalid_argument("fd_series_comparison: order_m must be in 1..6");
    if (!(alpha_c > 0.0)) throw std::invalid_argument("fd_series_comparison: alpha_c <= 0");

    const std::size_t n = u_inid.size();
    const double a = 1.0 - alpha_u;
    const double c = static_cast<double>(n) * alpha_c + 1.0;

    std::vector<double> xi(n), xc(n);
    for (std::size_t i = 0; i < n; ++i) {
        xi[i] = 1.0 / (1.0 + u_inid[i]);
        xc[i] = 1.0 / (1.0 + u_corr[i]);
    }

    SeriesComparison out;
    out.order = order_m;
    for (int m = 1; m <= order_m; ++m) {
        const double am = specialfn::pochhammer(a, m);
        out.sign_profile.push_back(am > 0.0 ? 1 : (am < 0.0 ? -1 : 0));

        const auto parts = partitions_of(m);
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t j = 0; j < parts.size(); ++j) index[parts[j]] = j;
        std::vector<double> inid_sums(parts.size(), 0.0), corr_sums(parts.size(), 0.0);
        accumulate_layer(m, xi, xc, index, inid_sums, corr_sums);

        const double cm = specialfn::pochhammer(c, m);
        for (std::size_t j = 0; j < parts.size(); ++j) {
            double coeff = am / cm;
            for (int p : parts[j]) {
                coeff *= specialfn::pochhammer(alpha_c, p);
                double fact = 1.0;
                for (int q = 2; q <= p; ++q) fact *= q;
                coeff /= fact;
            }
            SeriesComparison::Term term;
            term.layer = m;
            term.part_index = static_cast<int>(j) + 1;
            term.partition = parts[j];
            term.coeff = coeff;
            term.inid_sum = inid_sums[j];
            term.corr_sum = corr_sums[j];
            out.terms.push_back(std::move(term));
        }
    }
    return out;
}

}  // namespace cellcov::ordering
