#include "cellcov/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace cellcov {

namespace {

// node / Gauss-7 weight / Kronrod-15 weight, positive half
constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Interval {
    double a, b, value, err;
    bool operator<(const Interval& o) const { return err < o.err; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b, int& evals) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = kNodes[0][1] * f0;
    double k15 = kNodes[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kNodes[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += kNodes[i][1] * fi;
        k15 += kNodes[i][2] * fi;
    }
    evals += 15;
    g7 *= h;
    k15 *= h;
    return {a, b, k15, std::fabs(k15 - g7)};
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_intervals) {
    QuadResult out;
    if (a == b) return out;

    std::priority_queue<Interval> q;
    q.push(gk15(f, a, b, out.evals));
    double total = q.top().value;
    double err = q.top().err;

    int n = 1;
    while (err > abs_tol && n < max_intervals) {
        Interval worst = q.top();
        q.pop();
        total -= worst.value;
        err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by roundoff
            total += worst.value;
            err += worst.err;
            break;
        }
        Interval left = gk15(f, worst.a, mid, out.evals);
        Interval right = gk15(f, mid, worst.b, out.evals);
        total += left.value + right.value;
        err += left.err + right.err;
        q.push(left);
        q.push(right);
        ++n;
    }

    out.value = total;
    out.abs_error = err;
    return out;
}

}  // namespace cellcov
