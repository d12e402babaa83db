#include "cellcov/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cellcov::cli {

namespace {

const std::set<std::string> kKnownKeys = {
    "geometry.R", "geometry.beta", "geometry.d_min", "geometry.user_direction_deg",
    "geometry.distances", "geometry.average_angles",
    "fading.alpha_u", "fading.lambda_u", "fading.alpha_c", "fading.interferer_alphas",
    "fading.interferer_lambdas",
    "correlation.kind", "correlation.rho", "correlation.rho_matrix",
    "shadowing.sigma_dB", "shadowing.rho_shadow",
    "query.T_dB", "query.r",
    "run.trials", "run.seed", "run.variants"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": expected a number, got '" + s + "'");
    }
}

std::vector<std::string> split_list(const std::string& s, const std::string& where) {
    const std::string t = trim(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw std::runtime_error(where + ": expected a [..] list, got '" + s + "'");
    std::vector<std::string> items;
    std::string inner = t.substr(1, t.size() - 2);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::vector<double> parse_number_list(const std::string& s, const std::string& where) {
    std::vector<double> out;
    for (const auto& item : split_list(s, where)) out.push_back(parse_number(item, where));
    return out;
}

void apply_key(ScenarioFile& f, const std::string& key, const std::string& value,
               const std::string& where) {
    if (!kKnownKeys.count(key)) throw std::runtime_error(where + ": unknown key '" + key + "'");
    if (key == "geometry.R") f.R = parse_number(value, where);
    else if (key == "geometry.beta") f.beta = parse_number(value, where);
    else if (key == "geometry.d_min") f.d_min = parse_number(value, where);
    else if (key == "geometry.user_direction_deg") f.user_direction_deg = parse_number(value, where);
    else if (key == "geometry.distances") f.distances = parse_number_list(value, where);
    else if (key == "geometry.average_angles") {
        if (value == "true") f.average_angles = true;
        else if (value == "false") f.average_angles = false;
        else throw std::runtime_error(where + ": expected true/false");
    } else if (key == "fading.alpha_u") f.alpha_u = parse_number(value, where);
    else if (key == "fading.lambda_u") f.lambda_u = parse_number(value, where);
    else if (key == "fading.alpha_c") f.alpha_c = parse_number(value, where);
    else if (key == "fading.interferer_alphas") f.interferer_alphas = parse_number_list(value, where);
    else if (key == "fading.interferer_lambdas") f.interferer_lambdas = parse_number_list(value, where);
    else if (key == "correlation.kind") {
        if (value != "none" && value != "exponential" && value != "explicit")
            throw std::runtime_error(where + ": correlation.kind must be none|exponential|explicit");
        f.corr_kind = value;
    } else if (key == "correlation.rho") f.rho = parse_number(value, where);
    else if (key == "correlation.rho_matrix") f.rho_matrix = parse_number_list(value, where);
    else if (key == "shadowing.sigma_dB") f.sigma_dB = parse_number(value, where);
    else if (key == "shadowing.rho_shadow") f.rho_shadow = parse_number(value, where);
    else if (key == "query.T_dB") f.T_dB = parse_number_list(value, where);
    else if (key == "query.r") f.r = parse_number_list(value, where);
    else if (key == "run.trials") f.trials = static_cast<std::uint64_t>(parse_number(value, where));
    else if (key == "run.seed") f.seed = static_cast<std::uint64_t>(parse_number(value, where));
    else if (key == "run.variants") {
        f.variants.clear();
        for (const auto& item : split_list(value, where)) {
            sim::Variant::parse(item);  // validates the name
            f.variants.push_back(item);
        }
    }
}

std::vector<std::string> missing_keys(const std::set<std::string>& seen) {
    std::vector<std::string> out;
    for (const auto& k : kKnownKeys)
        if (!seen.count(k)) out.push_back(k);
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt(v[i]);
    }
    return s + "]";
}

}  // namespace

ParsedScenario parse_scenario_text(const std::string& text) {
    ParsedScenario out;
    std::set<std::string> seen;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(lineno);
        if (eq == std::string::npos) throw std::runtime_error(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (seen.count(key)) throw std::runtime_error(where + ": duplicate key '" + key + "'");
        apply_key(out.file, key, value, where + " (" + key + ")");
        seen.insert(key);
    }
    out.assumed_defaults = missing_keys(seen);
    return out;
}

ParsedScenario parse_scenario_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("json parse error: ") + e.what());
    }
    ParsedScenario out;
    std::set<std::string> seen;
    if (!j.is_object()) throw std::runtime_error("json scenario: top level must be an object");
    for (const auto& [section, body] : j.items()) {
        if (!body.is_object()) throw std::runtime_error("json scenario: '" + section + "' must be an object");
        for (const auto& [name, value] : body.items()) {
            const std::string key = section + "." + name;
            std::string text_value;
            if (value.is_array()) {
                text_value = "[";
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (i) text_value += ", ";
                    if (value[i].is_string()) text_value += value[i].get<std::string>();
                    else text_value += fmt(value[i].get<double>());
                }
                text_value += "]";
            } else if (value.is_boolean()) {
                text_value = value.get<bool>() ? "true" : "false";
            } else if (value.is_string()) {
                text_value = value.get<std::string>();
            } else {
                text_value = fmt(value.get<double>());
            }
            apply_key(out.file, key, text_value, "json key " + key);
            seen.insert(key);
        }
    }
    out.assumed_defaults = missing_keys(seen);
    return out;
}

ParsedScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_scenario_json(buf.str());
    return parse_scenario_text(buf.str());
}

std::string canonical_text(const ScenarioFile& f) {
    std::string s;
    s += "geometry.R = " + fmt(f.R) + "\n";
    s += "geometry.beta = " + fmt(f.beta) + "\n";
    s += "geometry.d_min = " + fmt(f.d_min) + "\n";
    s += "geometry.user_direction_deg = " + fmt(f.user_direction_deg) + "\n";
    if (f.distances) s += "geometry.distances = " + fmt_list(*f.distances) + "\n";
    s += std::string("geometry.average_angles = ") + (f.average_angles ? "true" : "false") + "\n";
    s += "fading.alpha_u = " + fmt(f.alpha_u) + "\n";
    if (f.lambda_u) s += "fading.lambda_u = " + fmt(*f.lambda_u) + "\n";
    if (f.alpha_c) s += "fading.alpha_c = " + fmt(*f.alpha_c) + "\n";
    if (f.interferer_alphas) s += "fading.interferer_alphas = " + fmt_list(*f.interferer_alphas) + "\n";
    if (f.interferer_lambdas) s += "fading.interferer_lambdas = " + fmt_list(*f.interferer_lambdas) + "\n";
    s += "correlation.kind = " + f.corr_kind + "\n";
    s += "correlation.rho = " + fmt(f.rho) + "\n";
    if (f.rho_matrix) s += "correlation.rho_matrix = " + fmt_list(*f.rho_matrix) + "\n";
    if (f.sigma_dB) s += "shadowing.sigma_dB = " + fmt(*f.sigma_dB) + "\n";
    s += "shadowing.rho_shadow = " + fmt(f.rho_shadow) + "\n";
    s += "query.T_dB = " + fmt_list(f.T_dB) + "\n";
    s += "query.r = " + fmt_list(f.r) + "\n";
    s += "run.trials = " + std::to_string(f.trials) + "\n";
    s += "run.seed = " + std::to_string(f.seed) + "\n";
    s += "run.variants = [";
    for (std::size_t i = 0; i < f.variants.size(); ++i) {
        if (i) s += ", ";
        s += f.variants[i];
    }
    s += "]\n";
    return s;
}

std::uint64_t assumptions_hash(const ScenarioFile& f) {
    const std::string text = canonical_text(f);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

ResolvedScenario resolve(const ParsedScenario& parsed) {
    const ScenarioFile& f = parsed.file;
    ResolvedScenario out;
    out.file = f;
    out.hash = assumptions_hash(f);
    for (const auto& key : parsed.assumed_defaults) out.notes.push_back("default: " + key);
    out.notes.push_back("convention: C carries sqrt(rho_ij) off-diagonal");

    if (f.distances) {
        out.sim.geometry = sim::fixed_geometry(*f.distances, f.beta, f.d_min);
    } else {
        out.sim.geometry = sim::hex_layout(f.R, f.beta, f.d_min, f.user_direction_deg);
    }
    out.sim.average_angles = f.average_angles;

    const std::size_t n = out.sim.geometry.interferer_count();
    std::vector<gammasum::GammaComponent> interferers;
    if (f.interferer_alphas) {
        if (f.interferer_alphas->size() != n)
            throw std::runtime_error("scenario: interferer_alphas length must match geometry (" +
                                     std::to_string(n) + ")");
        for (std::size_t i = 0; i < n; ++i) {
            const double a = (*f.interferer_alphas)[i];
            double lam = 1.0 / a;
            if (f.interferer_lambdas) {
                if (f.interferer_lambdas->size() != n)
                    throw std::runtime_error("scenario: interferer_lambdas length mismatch");
                lam = (*f.interferer_lambdas)[i];
            }
            interferers.push_back({a, lam});
        }
    } else {
        const double a = f.alpha_c.value_or(1.0);
        for (std::size_t i = 0; i < n; ++i) interferers.push_back({a, 1.0 / a});
        if (f.interferer_lambdas) {
            if (f.interferer_lambdas->size() != n)
                throw std::runtime_error("scenario: interferer_lambdas length mismatch");
            for (std::size_t i = 0; i < n; ++i) interferers[i].scale = (*f.interferer_lambdas)[i];
        }
        if (!f.alpha_c) out.notes.push_back("default: fading.alpha_c = 1");
    }
    if (!f.interferer_lambdas) out.notes.push_back("default: unit-mean interferer channels (lambda = 1/alpha)");

    const double lambda_u = f.lambda_u.value_or(1.0 / f.alpha_u);
    if (!f.lambda_u) out.notes.push_back("default: unit-mean user channel (lambda_u = 1/alpha_u)");

    // Nakagami domain on the physical channels
    if (f.alpha_u < 0.5) throw std::runtime_error("scenario: alpha_u must be >= 0.5");
    for (const auto& c : interferers)
        if (c.shape < 0.5) throw std::runtime_error("scenario: interferer shapes must be >= 0.5");

    out.sim.fading = coverage::FadingSpec::make({f.alpha_u, lambda_u}, std::move(interferers));

    if (f.corr_kind == "exponential") {
        out.sim.corr = gammasum::CorrelationSpec::exponential(n, f.rho);
    } else if (f.corr_kind == "explicit") {
        if (!f.rho_matrix) throw std::runtime_error("scenario: explicit correlation needs rho_matrix");
        out.sim.corr = gammasum::CorrelationSpec::explicit_matrix(*f.rho_matrix, n);
    }
    if (f.sigma_dB) {
        if (*f.sigma_dB < 0.0) throw std::runtime_error("scenario: sigma_dB must be >= 0");
        out.sim.sigma_dB = *f.sigma_dB;
    }
    out.sim.rho_shadow = f.rho_shadow;

    out.T_linear.reserve(f.T_dB.size());
    for (double tdb : f.T_dB) out.T_linear.push_back(std::pow(10.0, tdb / 10.0));

    for (const auto& v : f.variants) {
        const sim::Variant var = sim::Variant::parse(v);
        if (var.correlated && !out.sim.corr)
            throw std::runtime_error("scenario: variant '" + v + "' needs a correlation spec");
        if (var.shadowed && !(out.sim.sigma_dB > 0.0))
            throw std::runtime_error("scenario: variant '" + v + "' needs shadowing.sigma_dB > 0");
    }
    return out;
}

}  // namespace cellcov::cli
