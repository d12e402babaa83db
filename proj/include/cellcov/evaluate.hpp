#pragma once

#include "cellcov/ordering.hpp"
#include "cellcov/rate.hpp"
#include "cellcov/simulate.hpp"

namespace cellcov::eval {

// Analytic coverage for one (r, T) cell of a scenario under the given
// variant. simo-cancel drops the strongest-mean interferer before
// evaluation; shadowed variants go through the moment-matched forms.
coverage::CoverageResult eval_coverage(const sim::SimScenario& scn, double r, double T,
                                       sim::Variant variant,
                                       coverage::MethodPolicy policy = coverage::MethodPolicy::automatic);

// Average rate over the threshold integral, analytic coverage inside.
rate::RateResult eval_rate(const sim::SimScenario& scn, double r, sim::Variant variant,
                           double abs_tol = 1e-7);

// Scenario-level wrapper for the truncated series comparison: maps the
// scenario to k lambda'_i and k lambdahat_i and compares layer terms.
ordering::SeriesComparison series_comparison(const sim::SimScenario& scn, double r, double T,
                                             int order_m = 3);

}  // namespace cellcov::eval
