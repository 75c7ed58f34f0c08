#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "codeint/json_io.hpp"
#include "codeint/mult_code.hpp"

namespace codeint {

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "duality",  "distance", "decoder-agreement", "fourier",   "mu",         "yz-end-to-end",
        "verifier", "guesser",  "list-recovery",     "expansion", "guess-bound"};
    return names;
}

// Experiments whose measurements consume randomness; these require a seed.
inline bool experiment_is_stochastic(const std::string& name) {
    return name != "distance";
}

struct PresetDef {
    std::string name;
    std::uint64_t p;
    std::uint32_t s, k, n;
    double bias;
    std::uint32_t lambda;
    const char* backs;  // acceptance criteria this preset backs
};

inline const std::vector<PresetDef>& preset_table() {
    static const std::vector<PresetDef> presets = {
        {"tiny-5-1-2", 5, 1, 2, 5, 0.001, 1, "criteria 1, 2, 4 (dual support), 10"},
        {"tiny-7-2-3", 7, 2, 3, 7, 0.001, 1, "criteria 1, 3"},
        {"mid-5-1-3", 5, 1, 3, 5, 0.001, 1, "criteria 6, 7"},
        {"mid-3-2-2", 3, 2, 2, 3, 0.001, 1, "criteria 4 (identities), 8"},
    };
    return presets;
}

struct ExperimentConfig {
    std::string experiment;
    std::string preset;
    std::optional<CodeParams> params;
    std::optional<double> bias;       // overrides the preset default
    std::optional<std::uint32_t> lambda;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out_path;
    std::string format = "json";
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    Json echo;  // the validated raw configuration, echoed into reports
};

namespace detail {
inline std::uint64_t next_prime_above(std::uint64_t v) {
    std::uint64_t c = v + 1;
    while (!PrimeField::is_prime(c)) ++c;
    return c;
}
}  // namespace detail

// Resolves the preset/explicit parameters of a validated config. The
// "paper-schedule" preset instantiates q in (lambda^5, 2*lambda^5], k =
// lambda^3, s = lambda, n = q, bias 1/lambda^4; lambda >= 3 is over every
// desk cap and rejected.
struct ResolvedConfig {
    ExperimentConfig cfg;
    CodeParams params;
    double bias;
    std::uint32_t lambda;
};

inline ResolvedConfig resolve_config(const ExperimentConfig& cfg) {
    if (cfg.params) {
        return ResolvedConfig{cfg, *cfg.params, cfg.bias.value_or(0.001), cfg.lambda.value_or(1)};
    }
    if (cfg.preset.empty())
        throw std::invalid_argument("config: need a preset or explicit params");
    if (cfg.preset == "paper-schedule") {
        const std::uint32_t lam = cfg.lambda.value_or(2);
        if (lam < 2) throw std::invalid_argument("paper-schedule: lambda must be >= 2");
        if (lam >= 3)
            throw CapExceeded("paper-schedule: lambda >= 3 exceeds every desk cap");
        const std::uint64_t l5 = 1ull * lam * lam * lam * lam * lam;
        const std::uint64_t q = detail::next_prime_above(l5);
        if (q > 2 * l5) throw std::logic_error("paper-schedule: Bertrand failed?");
        const std::uint32_t k = lam * lam * lam;
        std::vector<FieldElem> alphas(q);
        for (std::uint64_t i = 0; i < q; ++i) alphas[i] = static_cast<FieldElem>(i);
        CodeParams params(PrimeField(q), lam, k, std::move(alphas));
        const double bias = cfg.bias.value_or(1.0 / (1.0 * lam * lam * lam * lam));
        return ResolvedConfig{cfg, std::move(params), bias, lam};
    }
    for (const auto& def : preset_table()) {
        if (def.name != cfg.preset) continue;
        std::vector<FieldElem> alphas(def.n);
        for (std::uint32_t i = 0; i < def.n; ++i) alphas[i] = i;
        CodeParams params(PrimeField(def.p), def.s, def.k, std::move(alphas));
        return ResolvedConfig{cfg, std::move(params), cfg.bias.value_or(def.bias),
                              cfg.lambda.value_or(def.lambda)};
    }
    throw std::invalid_argument("config: unknown preset '" + cfg.preset + "'");
}

// Parses and validates a JSON config object. Unknown keys are rejected;
// stochastic experiments require a seed; code parameters are re-validated by
// CodeParams.
inline ExperimentConfig parse_config(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    static const std::vector<std::string> known = {"schema", "experiment", "preset",  "params",
                                                   "bias",   "lambda",     "seed",    "trials",
                                                   "out",    "format",     "caps"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const auto& k : known) ok |= k == key;
        if (!ok) throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (j.contains("schema") && j.at("schema").get<int>() != 1)
        throw std::invalid_argument("config: unsupported schema version");

    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    bool valid_experiment = false;
    for (const auto& name : experiment_names()) valid_experiment |= name == cfg.experiment;
    if (!valid_experiment)
        throw std::invalid_argument("config: unknown experiment '" + cfg.experiment + "'");

    if (j.contains("preset")) cfg.preset = j.at("preset").get<std::string>();
    if (j.contains("params")) {
        if (!cfg.preset.empty())
            throw std::invalid_argument("config: give a preset or explicit params, not both");
        cfg.params = params_from_json(j.at("params"));
    }
    if (j.contains("bias")) {
        cfg.bias = j.at("bias").get<double>();
        if (*cfg.bias < 0.0 || *cfg.bias > 1.0)
            throw std::invalid_argument("config: bias outside [0, 1]");
    }
    if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<std::uint32_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
    if (j.contains("format")) {
        cfg.format = j.at("format").get<std::string>();
        if (cfg.format != "json" && cfg.format != "csv-summary")
            throw std::invalid_argument("config: format must be json or csv-summary");
    }
    if (j.contains("caps")) {
        const auto& caps = j.at("caps");
        for (const auto& [key, value] : caps.items()) {
            (void)value;
            if (key != "enumeration")
                throw std::invalid_argument("config: unknown caps key '" + key + "'");
        }
        if (caps.contains("enumeration"))
            cfg.enumeration_cap = caps.at("enumeration").get<std::uint64_t>();
    }
    if (experiment_is_stochastic(cfg.experiment) && !cfg.seed)
        throw std::invalid_argument("config: stochastic experiment '" + cfg.experiment +
                                    "' requires a seed");
    // fail fast on invalid preset names / parameters
    cfg.echo = j;
    resolve_config(cfg);
    return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    return parse_config(Json::parse(text));
}

inline ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

struct CheckResult {
    std::string check_id;
    std::string preset;
    bool pass = false;
    std::optional<double> measured;
    std::optional<double> bound;
    std::optional<double> tolerance;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Json details = Json::object();
};

struct Report {
    Json config_echo;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::uint64_t>> seeds_consumed;
    double wall_clock_ms = 0.0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline Json report_to_json(const Report& rep) {
    Json j;
    j["schema"] = 1;
    j["config"] = rep.config_echo;
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json cj;
        cj["check_id"] = c.check_id;
        cj["preset"] = c.preset;
        cj["pass"] = c.pass;
        cj["measured"] = c.measured ? Json(*c.measured) : Json(nullptr);
        cj["bound"] = c.bound ? Json(*c.bound) : Json(nullptr);
        cj["tolerance"] = c.tolerance ? Json(*c.tolerance) : Json(nullptr);
        cj["trials"] = c.trials;
        cj["seed"] = c.seed;
        if (!c.details.empty()) cj["details"] = c.details;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    Json seeds = Json::array();
    for (const auto& [tag, seed] : rep.seeds_consumed) {
        Json sj;
        sj["purpose"] = tag;
        sj["seed"] = seed;
        seeds.push_back(std::move(sj));
    }
    j["seeds_consumed"] = std::move(seeds);
    j["all_pass"] = rep.all_pass();
    j["wall_clock_ms"] = rep.wall_clock_ms;
    return j;
}

inline std::string format_double(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

// CSV summary: one row per check.
inline std::string report_to_csv(const Report& rep) {
    std::string out = "check_id,preset,pass,measured,bound,tolerance,trials,seed\n";
    for (const auto& c : rep.checks) {
        out += c.check_id + "," + c.preset + "," + (c.pass ? "1" : "0") + ",";
        out += (c.measured ? format_double(*c.measured) : "") + std::string(",");
        out += (c.bound ? format_double(*c.bound) : "") + std::string(",");
        out += (c.tolerance ? format_double(*c.tolerance) : "") + std::string(",");
        out += std::to_string(c.trials) + "," + std::to_string(c.seed) + "\n";
    }
    return out;
}

inline std::string emit_report(const Report& rep, const std::string& format) {
    if (format == "csv-summary") return report_to_csv(rep);
    if (format == "json") return report_to_json(rep).dump(2) + "\n";
    throw std::invalid_argument("emit_report: unknown format '" + format + "'");
}

}  // namespace codeint
