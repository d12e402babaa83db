#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellcov/simulate.hpp"

namespace cellcov::cli {

// Scenario file model. Text form is dotted-key assignments,
// e.g. `fading.alpha_u = 0.5`, lists as `[a, b, c]`; a JSON object with the
// same nesting is accepted as an alternate encoding. Unknown keys are
// rejected; defaulted keys are echoed in output metadata.
struct ScenarioFile {
    // geometry
    double R = 866.0;
    double beta = 3.76;
    double d_min = 35.0;
    double user_direction_deg = 30.0;
    std::optional<std::vector<double>> distances;  // explicit interferer distances (toy layouts)
    bool average_angles = false;
    // fading (scales default to 1/alpha: unit mean power per channel)
    double alpha_u = 1.0;
    std::optional<double> lambda_u;
    std::optional<double> alpha_c;                         // common interferer shape
    std::optional<std::vector<double>> interferer_alphas;  // explicit i.n.i.d. list
    std::optional<std::vector<double>> interferer_lambdas;
    // correlation
    std::string corr_kind = "none";  // none | exponential | explicit
    double rho = 0.0;
    std::optional<std::vector<double>> rho_matrix;  // row-major, pairwise rho_ij
    // shadowing
    std::optional<double> sigma_dB;
    double rho_shadow = 0.0;
    // query
    std::vector<double> T_dB{0.0};
    std::vector<double> r{600.0};
    // run
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    std::vector<std::string> variants{"inid"};
};

struct ParsedScenario {
    ScenarioFile file;
    std::vector<std::string> assumed_defaults;  // keys that fell back to defaults
};

// Parsing throws std::runtime_error with line/field diagnostics.
ParsedScenario parse_scenario_text(const std::string& text);
ParsedScenario parse_scenario_json(const std::string& text);
ParsedScenario load_scenario(const std::string& path);  // dispatch on .json extension

// Canonical serialization: fixed key order, %.17g numbers. Parsing the
// canonical text reproduces the same model.
std::string canonical_text(const ScenarioFile& f);

// FNV-1a hash of the canonical text; stamped on every output row.
std::uint64_t assumptions_hash(const ScenarioFile& f);

struct ResolvedScenario {
    sim::SimScenario sim;
    std::vector<double> T_linear;  // parallel to file.T_dB
    ScenarioFile file;
    std::uint64_t hash = 0;
    std::vector<std::string> notes;  // assumed defaults and convention notes
};

// Builds geometry/fading/correlation and validates the Nakagami domain
// (shape parameters >= 0.5 on the physical channels).
ResolvedScenario resolve(const ParsedScenario& parsed);

}  // namespace cellcov::cli
