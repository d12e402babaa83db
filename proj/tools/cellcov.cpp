// Command-line front end: scenario ingestion, coverage/rate sweeps in CSV or
// JSON, and the verification suites.
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cellcov/evaluate.hpp"
#include "cellcov/scenario.hpp"
#include "cellcov/verify.hpp"

namespace {

using namespace cellcov;

constexpr const char* kCoverageSchema = "cellcov.coverage.v1";
constexpr const char* kRateSchema = "cellcov.rate.v1";
constexpr const char* kSweepSchema = "cellcov.sweep.v1";

std::string fmt_val(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Row {
    std::string metric;  // coverage | rate
    double r = 0.0;
    std::optional<double> T_dB;
    std::string variant;
    double value = 0.0;
    std::string method;
    double est_error = 0.0;
};

struct Output {
    std::string schema;
    cli::ResolvedScenario scenario;
    std::vector<Row> rows;
};

void write_csv(const Output& out, std::ostream& os, bool with_timestamp, bool sweep_layout) {
    os << "# schema: " << out.schema << "\n";
    if (with_timestamp) {
        const std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "# generated: " << buf << "\n";
    }
    for (const auto& note : out.scenario.notes) os << "# " << note << "\n";
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof hashbuf, "%016llx",
                  static_cast<unsigned long long>(out.scenario.hash));
    if (sweep_layout) {
        os << "metric,r,T_dB,variant,value,method,est_error,assumptions_hash\n";
        for (const auto& row : out.rows) {
            os << row.metric << "," << fmt_val(row.r) << ","
               << (row.T_dB ? fmt_val(*row.T_dB) : std::string()) << "," << row.variant << ","
               << fmt_val(row.value) << "," << row.method << "," << fmt_val(row.est_error) << ","
               << hashbuf << "\n";
        }
    } else if (out.schema == kRateSchema) {
        os << "r,variant,nats,est_error,method,assumptions_hash\n";
        for (const auto& row : out.rows)
            os << fmt_val(row.r) << "," << row.variant << "," << fmt_val(row.value) << ","
               << fmt_val(row.est_error) << "," << row.method << "," << hashbuf << "\n";
    } else {
        os << "r,T_dB,variant,value,method,est_error,assumptions_hash\n";
        for (const auto& row : out.rows)
            os << fmt_val(row.r) << "," << fmt_val(row.T_dB.value_or(0.0)) << "," << row.variant
               << "," << fmt_val(row.value) << "," << row.method << "," << fmt_val(row.est_error)
               << "," << hashbuf << "\n";
    }
}

void write_json(const Output& out, std::ostream& os) {
    nlohmann::json j;
    j["schema"] = out.schema;
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof hashbuf, "%016llx",
                  static_cast<unsigned long long>(out.scenario.hash));
    j["metadata"] = {{"assumptions_hash", hashbuf},
                     {"notes", out.scenario.notes},
                     {"canonical_scenario", cli::canonical_text(out.scenario.file)},
                     {"seed", out.scenario.file.seed},
                     {"trials", out.scenario.file.trials}};
    j["rows"] = nlohmann::json::array();
    for (const auto& row : out.rows) {
        nlohmann::json jr = {{"metric", row.metric},   {"r", row.r},
                             {"variant", row.variant}, {"value", row.value},
                             {"method", row.method},   {"est_error", row.est_error}};
        if (row.T_dB) jr["T_dB"] = *row.T_dB;
        j["rows"].push_back(jr);
    }
    os << j.dump(2) << "\n";
}

void emit(const Output& out, const std::string& out_path, const std::string& format,
          bool no_timestamp, bool sweep_layout) {
    std::ostringstream body;
    if (format == "json") write_json(out, body);
    else write_csv(out, body, !no_timestamp, sweep_layout);
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << body.str();
    }
}

// analytic + optional Monte Carlo rows for one metric across the query grid
std::vector<Row> run_rows(const cli::ResolvedScenario& rs, bool do_coverage, bool do_rate,
                          bool with_mc, std::uint64_t seed, std::uint64_t trials) {
    std::vector<Row> rows;
    std::uint64_t row_index = 0;
    for (double r_user : rs.file.r) {
        for (const auto& vname : rs.file.variants) {
            const sim::Variant variant = sim::Variant::parse(vname);
            if (do_coverage) {
                for (std::size_t ti = 0; ti < rs.T_linear.size(); ++ti) {
                    Row row;
                    row.metric = "coverage";
                    row.r = r_user;
                    row.T_dB = rs.file.T_dB[ti];
                    row.variant = vname;
                    try {
                        const auto c = eval::eval_coverage(rs.sim, r_user, rs.T_linear[ti], variant);
                        row.value = c.value;
                        row.method = coverage::to_string(c.method);
                        row.est_error = c.est_abs_error;
                    } catch (const std::exception& e) {
                        row.value = std::nan("");
                        row.method = "error";
                        row.est_error = std::nan("");
                        std::cerr << "row failed (r=" << r_user << ", variant=" << vname
                                  << "): " << e.what() << "\n";
                    }
                    rows.push_back(row);
                    if (with_mc) {
                        Row mc = row;
                        try {
                            const auto est =
                                sim::simulate(rs.sim, r_user, sim::Metric::coverage(rs.T_linear[ti]),
                                              variant, trials, seed + row_index);
                            mc.value = est.mean;
                            mc.method = "monte-carlo";
                            mc.est_error = est.std_err;
                        } catch (const std::exception& e) {
                            mc.value = std::nan("");
                            mc.method = "error";
                            mc.est_error = std::nan("");
                            std::cerr << "mc row failed: " << e.what() << "\n";
                        }
                        rows.push_back(mc);
                    }
                    ++row_index;
                }
            }
            if (do_rate) {
                Row row;
                row.metric = "rate";
                row.r = r_user;
                row.variant = vname;
                try {
                    const auto rr = eval::eval_rate(rs.sim, r_user, variant);
                    row.value = rr.value;
                    row.method = coverage::to_string(rr.method);
                    row.est_error = rr.est_abs_error;
                } catch (const std::exception& e) {
                    row.value = std::nan("");
                    row.method = "error";
                    row.est_error = std::nan("");
                    std::cerr << "rate row failed (r=" << r_user << ", variant=" << vname
                              << "): " << e.what() << "\n";
                }
                rows.push_back(row);
                if (with_mc) {
                    Row mc = row;
                    try {
                        const auto est = sim::simulate(rs.sim, r_user, sim::Metric::rate(), variant,
                                                       trials, seed + row_index);
                        mc.value = est.mean;
                        mc.method = "monte-carlo";
                        mc.est_error = est.std_err;
                    } catch (const std::exception& e) {
                        mc.value = std::nan("");
                        mc.method = "error";
                        mc.est_error = std::nan("");
                        std::cerr << "mc rate row failed: " << e.what() << "\n";
                    }
                    rows.push_back(mc);
                }
                ++row_index;
            }
        }
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coverage and rate under correlated Nakagami-m interference"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, format = "csv";
    std::optional<std::uint64_t> seed_flag, trials_flag;
    bool no_timestamp = false, with_mc = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_path, "scenario file (text or .json)")->required();
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--seed", seed_flag, "override run.seed");
        cmd->add_option("--trials", trials_flag, "override run.trials");
        cmd->add_flag("--no-timestamp", no_timestamp, "suppress the timestamp header line");
        cmd->add_flag("--with-mc", with_mc, "add Monte Carlo rows next to analytic ones");
    };

    CLI::App* cov = app.add_subcommand("coverage", "coverage sweep over the scenario grid");
    add_common(cov);
    CLI::App* rate_cmd = app.add_subcommand("rate", "average-rate sweep over the scenario grid");
    add_common(rate_cmd);
    CLI::App* sweep = app.add_subcommand("sweep", "coverage and rate, all variants");
    add_common(sweep);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    std::uint64_t verify_seed = 20240810;
    verify_cmd->add_option("suite", suite, "theorems|oracles|figures")
        ->required()
        ->check(CLI::IsMember({"theorems", "oracles", "figures"}));
    verify_cmd->add_option("--seed", verify_seed, "suite seed");
    std::string fixture_dir = "fixtures";
    verify_cmd->add_option("--fixture-dir", fixture_dir, "fixture directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify_cmd->parsed()) {
            int hard = 0;
            if (suite == "theorems")
                hard = verify::report(verify::theorems_suite(verify_seed, fixture_dir));
            else if (suite == "oracles")
                hard = verify::report(verify::oracles_suite(verify_seed));
            else
                (void)verify::report(verify::figures_suite(verify_seed));  // scores only
            return hard == 0 ? 0 : 1;
        }

        auto parsed = cli::load_scenario(scenario_path);
        if (seed_flag) parsed.file.seed = *seed_flag;
        if (trials_flag) parsed.file.trials = *trials_flag;
        const auto rs = cli::resolve(parsed);

        Output out;
        out.scenario = rs;
        const bool do_cov = cov->parsed() || sweep->parsed();
        const bool do_rate = rate_cmd->parsed() || sweep->parsed();
        out.schema = sweep->parsed() ? kSweepSchema : (do_rate ? kRateSchema : kCoverageSchema);
        out.rows = run_rows(rs, do_cov, do_rate, with_mc, rs.file.seed, rs.file.trials);
        emit(out, out_path, format, no_timestamp, sweep->parsed());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
