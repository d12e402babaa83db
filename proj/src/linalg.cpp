#include "cellcov/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace cellcov {

namespace {

double off_diag_norm2(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a[p * n + q] * a[p * n + q];
    return s;
}

void rotate(std::vector<double>& a, std::size_t n, std::size_t p, std::size_t q) {
    const double apq = a[p * n + q];
    if (apq == 0.0) return;
    const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    const double app = a[p * n + p];
    const double aqq = a[q * n + q];
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        const double aip = a[i * n + p];
        const double aiq = a[i * n + q];
        a[i * n + p] = aip - s * (aiq + tau * aip);
        a[p * n + i] = a[i * n + p];
        a[i * n + q] = aiq + s * (aip - tau * aiq);
        a[q * n + i] = a[i * n + q];
    }
}

}  // namespace

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n, double rel_tol) {
    if (n == 0) return {};
    double norm2 = 0.0;
    for (double v : a) norm2 += v * v;
    const double thresh2 = rel_tol * rel_tol * norm2;

    bool final_sweep = false;
    for (int sweep = 0; sweep < 60; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, n, p, q);
        if (final_sweep) break;
        if (off_diag_norm2(a, n) <= thresh2) final_sweep = true;
        if (sweep == 58 && !final_sweep) throw std::runtime_error("jacobi_eigenvalues: no convergence");
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
    return eig;
}

std::optional<std::vector<double>> cholesky(const std::vector<double>& a, std::size_t n) {
    std::vector<double> l(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
        if (d <= 0.0 || !std::isfinite(d)) return std::nullopt;
        l[j * n + j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            l[i * n + j] = s / l[j * n + j];
        }
    }
    return l;
}

}  // namespace cellcov
