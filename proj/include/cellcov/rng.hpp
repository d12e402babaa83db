#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cellcov {

// SplitMix64 finalizer, used to turn (seed, stream index) pairs into
// well-separated engine seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Reproducible random stream. Streams with the same seed and distinct
// stream indices are independent, so Monte Carlo blocks can be assigned
// stream = block index and reduced in any order. All variates are generated
// from explicit uniforms (no std::*_distribution), which keeps draw
// sequences identical across standard libraries and makes common-random-
// number pairing exact.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(splitmix64(splitmix64(seed) ^ (stream * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull))) {}

    // uniform on [0, 1)
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // standard normal, Marsaglia polar method (no cached second variate)
    double normal() {
        for (;;) {
            const double u = 2.0 * u01() - 1.0;
            const double v = 2.0 * u01() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    // Gamma(alpha, 1) by the Marsaglia-Tsang squeeze method; alpha < 1 is
    // boosted through a draw at alpha+1 times U^{1/alpha}.
    double gamma(double alpha) {
        if (alpha < 1.0) {
            const double u = 1.0 - u01();  // in (0, 1]
            return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
        }
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = u01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // lognormal with zero log-mean and log-sd sigma (median 1)
    double lognormal(double sigma) { return std::exp(sigma * normal()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace cellcov
