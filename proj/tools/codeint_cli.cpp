#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "codeint/suite.hpp"

namespace {

// Assembles the effective config: file values first, then flag overrides.
codeint::Json merge_flags(codeint::Json base, const std::optional<std::string>& experiment,
                          const std::optional<std::string>& preset,
                          const std::optional<std::uint64_t>& seed,
                          const std::optional<std::uint64_t>& trials,
                          const std::optional<std::string>& out,
                          const std::optional<std::string>& format) {
    if (experiment) base["experiment"] = *experiment;
    if (preset) base["preset"] = *preset;
    if (seed) base["seed"] = *seed;
    if (trials) base["trials"] = *trials;
    if (out) base["out"] = *out;
    if (format) base["format"] = *format;
    return base;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "codeint: exact desk-scale experiments on multiplicity codes, their explicit duals,\n"
        "biased code-intersection oracles, and the dual-decoding convolution sampler"};

    std::optional<std::string> config_path;
    std::optional<std::string> experiment;
    std::optional<std::string> preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> out_path;
    std::optional<std::string> format;
    bool list_presets = false;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--experiment", experiment,
                   "experiment name (duality, distance, decoder-agreement, fourier, mu, "
                   "yz-end-to-end, verifier, guesser, list-recovery, expansion, guess-bound)");
    app.add_option("--preset", preset,
                   "named parameter preset (tiny-5-1-2, tiny-7-2-3, mid-5-1-3, mid-3-2-2, "
                   "paper-schedule)");
    app.add_option("--seed", seed, "master seed (required for stochastic experiments)");
    app.add_option("--trials", trials, "trial count override (0 = structural checks only)");
    app.add_option("--out", out_path, "write the report to this path");
    app.add_option("--format", format, "report format: json | csv-summary");
    app.add_flag("--list-presets", list_presets, "print the preset table and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const auto& def : codeint::preset_table())
            std::cout << def.name << ": q=" << def.p << " s=" << def.s << " k=" << def.k
                      << " n=" << def.n << " bias=" << def.bias << " lambda=" << def.lambda
                      << "  (backs " << def.backs << ")\n";
        std::cout << "paper-schedule: q = smallest prime > lambda^5, k = lambda^3, s = lambda, "
                     "n = q, bias = 1/lambda^4 (lambda >= 3 rejected as over-cap)\n";
        return 0;
    }

    try {
        codeint::Json base = codeint::Json::object();
        if (config_path) {
            std::ifstream in(*config_path);
            if (!in) {
                std::cerr << "error: cannot open " << *config_path << "\n";
                return 2;
            }
            base = codeint::Json::parse(in);
        }
        const codeint::Json effective =
            merge_flags(std::move(base), experiment, preset, seed, trials, out_path, format);
        const codeint::ExperimentConfig cfg = codeint::parse_config(effective);
        const codeint::Report rep = codeint::run_suite(cfg);
        std::cout << codeint::emit_report(rep, cfg.format);
        return rep.all_pass() ? 0 : 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
