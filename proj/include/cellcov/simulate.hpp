#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cellcov/coverage.hpp"
#include "cellcov/geometry.hpp"

namespace cellcov::sim {

// Scenario variant. The spec'd variants are inid, correlated, shadowed-inid,
// shadowed-correlated and simo-cancel; shadowed-simo is additionally allowed
// for the shadowed receiver comparisons. simo_cancel requires the i.n.i.d.
// base (the cancelled-interferer model is defined for independent links).
struct Variant {
    bool correlated = false;
    bool shadowed = false;
    bool simo_cancel = false;

    static Variant inid() { return {}; }
    static Variant corr() { return {true, false, false}; }
    static Variant shadowed_inid() { return {false, true, false}; }
    static Variant shadowed_corr() { return {true, true, false}; }
    static Variant simo() { return {false, false, true}; }
    static Variant shadowed_simo() { return {false, true, true}; }

    static Variant parse(const std::string& name);
    std::string name() const;
};

struct Metric {
    bool is_rate = false;
    double T = 1.0;  // target SIR (linear), coverage metric only

    static Metric coverage(double T_linear) { return {false, T_linear}; }
    static Metric rate() { return {true, 0.0}; }
};

// Everything a Monte Carlo run needs besides (r, metric, variant).
struct SimScenario {
    coverage::FadingSpec fading;
    NetworkGeometry geometry;
    std::optional<gammasum::CorrelationSpec> corr;
    double sigma_dB = 0.0;
    double rho_shadow = 0.0;
    bool average_angles = false;  // draw a uniform ray per trial instead of the fixed one
};

struct SimEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string variant;
};

// Monte Carlo estimate of the metric at user radius r. Trials are split into
// fixed-size blocks, each with its own (seed, block index) stream, and
// reduced in block order with compensated summation, so results are
// bit-identical for any worker count. threads = 0 picks a default.
SimEstimate simulate(const SimScenario& scn, double r, Metric metric, Variant variant,
                     std::uint64_t trials, std::uint64_t seed, int threads = 0);

struct PairedResult {
    SimEstimate inid;
    SimEstimate corr;
    SimEstimate gap;  // corr - inid per trial, common draws
};

// Common-random-number comparison of the i.n.i.d. and correlated variants:
// each trial reuses the same user draw and the same G_i for both sums.
// Requires equal interferer shapes and a correlation spec in the scenario.
PairedResult paired_compare(const SimScenario& scn, double r, Metric metric,
                            std::uint64_t trials, std::uint64_t seed, int threads = 0);

}  // namespace cellcov::sim
