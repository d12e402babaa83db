#include "cellcov/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cellcov/errors.hpp"
#include "cellcov/quadrature.hpp"

namespace cellcov::specialfn {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

bool is_nonpositive_integer(double a, double tol) {
    if (a > tol) return false;
    return std::fabs(a - std::nearbyint(a)) <= tol;
}

std::pair<double, int> log_pochhammer(double a, int n) {
    if (n < 0) throw std::domain_error("log_pochhammer: n < 0");
    double lg = 0.0;
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        const double t = a + j;
        if (t == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        if (t < 0.0) sign = -sign;
        lg += std::log(std::fabs(t));
    }
    return {lg, sign};
}

double pochhammer(double a, int n) {
    if (n < 0) throw std::domain_error("pochhammer: n < 0");
    if (n <= 50) {
        double p = 1.0;
        for (int j = 0; j < n; ++j) p *= a + j;
        return p;
    }
    const auto [lg, sign] = log_pochhammer(a, n);
    if (sign == 0) return 0.0;
    return sign * std::exp(lg);
}

// ---- regularized incomplete gamma ------------------------------------------

double reg_lower_gamma(double a, double x) {
    if (a <= 0.0) throw std::domain_error("reg_lower_gamma: a <= 0");
    if (x < 0.0) throw std::domain_error("reg_lower_gamma: x < 0");
    if (x == 0.0) return 0.0;

    const double lpre = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // series for P
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (term < sum * kEps) break;
        }
        return std::min(1.0, std::exp(lpre) * sum);
    }
    // continued fraction for Q (modified Lentz)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) break;
    }
    const double q = std::exp(lpre) * h;
    return std::max(0.0, 1.0 - q);
}

double reg_upper_gamma(double a, double x) { return 1.0 - reg_lower_gamma(a, x); }

// ---- F_D -------------------------------------------------------------------

const char* to_string(FdStrategy s) {
    switch (s) {
        case FdStrategy::terminating_series: return "terminating-series";
        case FdStrategy::truncated_series: return "truncated-series";
        case FdStrategy::euler_integral: return "euler-integral";
        case FdStrategy::outer_quadrature: return "outer-quadrature";
    }
    return "?";
}

void FdArgs::validate() const {
    if (b.size() != x.size()) throw std::invalid_argument("FdArgs: b and x length mismatch");
    if (b.empty()) throw std::invalid_argument("FdArgs: empty argument lists");
    for (double bi : b)
        if (!(bi > 0.0)) throw std::invalid_argument("FdArgs: b_i must be positive");
    if (!(c > 0.0) || is_nonpositive_integer(c)) throw std::invalid_argument("FdArgs: invalid c");
}

namespace {

// F_D layer decomposition: F_D = sum_m r_m * P_m with r_m = (a)_m / (c)_m and
// P_m the m-th coefficient of prod_j [ sum_n (b_j)_n x_j^n / n! z^n ].
EvalReport fd_series_impl(const FdArgs& args, double rel_tol, int max_total_order, bool enforce_disc) {
    args.validate();
    const std::size_t n = args.n();

    double max_abs_x = 0.0;
    for (double xi : args.x) max_abs_x = std::max(max_abs_x, std::fabs(xi));
    const bool terminating = is_nonpositive_integer(args.a);
    if (enforce_disc && max_abs_x >= 1.0)
        throw std::domain_error("fd_series: series requires max|x_i| < 1");

    int order_cap = max_total_order;
    if (terminating) order_cap = static_cast<int>(std::nearbyint(-args.a));

    EvalReport rep;
    rep.strategy = terminating ? FdStrategy::terminating_series : FdStrategy::truncated_series;

    // grow the truncation order geometrically until the layer tolerance is met
    int big_m = std::min(order_cap, 16);
    for (;;) {
        // per-coordinate coefficient arrays f_j(k) = (b_j)_k x_j^k / k!
        std::vector<double> prod(static_cast<std::size_t>(big_m) + 1, 0.0);
        prod[0] = 1.0;
        std::vector<double> f(static_cast<std::size_t>(big_m) + 1);
        std::vector<double> next(static_cast<std::size_t>(big_m) + 1);
        for (std::size_t j = 0; j < n; ++j) {
            f[0] = 1.0;
            for (int k = 0; k < big_m; ++k)
                f[k + 1] = f[k] * (args.b[j] + k) * args.x[j] / (k + 1);
            std::fill(next.begin(), next.end(), 0.0);
            for (int m = 0; m <= big_m; ++m) {
                const double pm = prod[m];
                if (pm == 0.0) continue;
                for (int k = 0; m + k <= big_m; ++k) next[m + k] += pm * f[k];
            }
            prod.swap(next);
        }

        double sum = 0.0;
        double ratio = 1.0;  // (a)_m / (c)_m
        double last_layer = 0.0;
        for (int m = 0; m <= big_m; ++m) {
            last_layer = ratio * prod[m];
            sum += last_layer;
            ratio *= (args.a + m) / (args.c + m);
            if (!terminating && m >= 2 && std::fabs(last_layer) <= rel_tol * std::fabs(sum)) {
                rep.value = sum;
                rep.terms_or_nodes = m + 1;
                rep.est_abs_error = std::fabs(last_layer);
                return rep;
            }
        }
        if (terminating && big_m >= order_cap) {
            rep.value = sum;
            rep.terms_or_nodes = order_cap + 1;
            rep.est_abs_error = 0.0;
            return rep;
        }
        if (big_m >= order_cap)
            throw NonConvergence("fd_series: tolerance not met by total order " + std::to_string(order_cap));
        big_m = std::min(order_cap, 2 * big_m);
    }
}

EvalReport fd_euler_integral(const FdArgs& args, double rel_tol) {
    // F_D = Gamma(c) / (Gamma(a) Gamma(c-a)) * I,
    // I = int_0^1 t^{a-1} (1-t)^{c-a-1} prod_i (1 - x_i t)^{-b_i} dt, c > a > 0.
    const double a = args.a, c = args.c;
    const auto smooth = [&](double t) {
        double lg = 0.0;
        for (std::size_t i = 0; i < args.n(); ++i) lg -= args.b[i] * std::log1p(-args.x[i] * t);
        return std::exp(std::min(lg, 690.0));  // keep the x_i -> 1 endpoint spike finite
    };

    const double lpre = std::lgamma(c) - std::lgamma(a) - std::lgamma(c - a);
    const double pre = std::exp(lpre);

    // coarse scale estimate for the absolute quadrature tolerance
    const double scale = std::max(1e-300, (smooth(0.25) + smooth(0.5) + smooth(0.75)) / 3.0 / std::max(a, c - a));
    const double abs_tol = std::max(1e-300, 0.1 * rel_tol * scale);

    QuadResult total;
    // left piece [0, 1/2]: substitute t = u^{1/a} when the t^{a-1} factor is singular
    {
        const auto left_f = [&](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, c - a - 1.0) * smooth(t); };
        QuadResult r;
        if (a < 1.0) {
            const double upper = std::pow(0.5, a);
            const double inv_a = 1.0 / a;
            r = integrate_gk(
                [&](double u) {
                    const double t = std::pow(u, inv_a);
                    return inv_a * std::pow(1.0 - t, c - a - 1.0) * smooth(t);
                },
                0.0, upper, abs_tol);
        } else {
            r = integrate_gk(left_f, 0.0, 0.5, abs_tol);
        }
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evals += r.evals;
    }
    // right piece [1/2, 1]: substitute 1 - t = s^{1/(c-a)} when (1-t)^{c-a-1} is singular
    {
        const double ca = c - a;
        if (ca < 1.0) {
            const double upper = std::pow(0.5, ca);
            const double inv_ca = 1.0 / ca;
            QuadResult r = integrate_gk(
                [&](double s) {
                    const double one_minus_t = std::pow(s, inv_ca);
                    const double t = 1.0 - one_minus_t;
                    return inv_ca * std::pow(t, a - 1.0) * smooth(t);
                },
                0.0, upper, abs_tol);
            total.value += r.value;
            total.abs_error += r.abs_error;
            total.evals += r.evals;
        } else {
            QuadResult r = integrate_gk(
                [&](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, ca - 1.0) * smooth(t); },
                0.5, 1.0, abs_tol);
            total.value += r.value;
            total.abs_error += r.abs_error;
            total.evals += r.evals;
        }
    }

    EvalReport rep;
    rep.value = pre * total.value;
    rep.strategy = FdStrategy::euler_integral;
    rep.terms_or_nodes = total.evals;
    rep.est_abs_error = pre * total.abs_error;
    return rep;
}

}  // namespace

EvalReport fd_series(const FdArgs& args, double rel_tol, int max_total_order) {
    if (!(rel_tol > 0.0)) throw std::domain_error("fd_series: rel_tol must be positive");
    return fd_series_impl(args, rel_tol, max_total_order, /*enforce_disc=*/true);
}

FdTransform fd_transform(const FdArgs& args) {
    args.validate();
    FdTransform out;
    out.args.a = args.c - args.a;
    out.args.b = args.b;
    out.args.c = args.c;
    out.args.x.resize(args.n());
    double lpre = 0.0;
    for (std::size_t i = 0; i < args.n(); ++i) {
        if (args.x[i] == 1.0) throw std::domain_error("fd_transform: x_i = 1");
        out.args.x[i] = args.x[i] / (args.x[i] - 1.0);
        lpre -= args.b[i] * std::log1p(-args.x[i]);
    }
    out.prefactor = std::exp(lpre);
    return out;
}

EvalReport fd_eval(const FdArgs& args, double rel_tol) {
    args.validate();
    if (is_nonpositive_integer(args.a))
        return fd_series_impl(args, rel_tol, 500, /*enforce_disc=*/false);
    if (args.c > args.a && args.a > 0.0) {
        for (double xi : args.x)
            if (xi >= 1.0) throw StrategyUnavailable("fd_eval: euler integral needs x_i < 1");
        return fd_euler_integral(args, rel_tol);
    }
    double max_abs_x = 0.0;
    for (double xi : args.x) max_abs_x = std::max(max_abs_x, std::fabs(xi));
    if (args.n() <= kSeriesMaxN && max_abs_x < 1.0)
        return fd_series_impl(args, rel_tol, 500, /*enforce_disc=*/true);
    throw StrategyUnavailable("fd_eval: no strategy for these arguments");
}

}  // namespace cellcov::specialfn
