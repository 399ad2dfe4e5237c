// glnlab: exact and sampled checks for the surjectivity counterexample.
//
//   glnlab verify   [--m 2] [--k 2] [--width 2] [--depth 2] [--seed S]
//   glnlab trend    [--m 10] [--m-min 4] [--samples 100000] [--seed S]
//   glnlab fat      [--n 4] [--target parity2|parity|const1|and|or|majority|term:K|truth] [--input bits]
//   glnlab fourier  [--m 2 | --target T --n N]
//   glnlab bs       [--m 2] [--input 0,1,2,3,0,1] | --target tribes --n 4
//   glnlab adaptive [--m 2] [--strategy file.json | --count 50 --depth 2 --width 1]
//
// Exit status: 0 all non-vacuous checks passed, 1 some check failed, 2 bad usage.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "glnlab/commands.hpp"

namespace {

using glnlab::Json;
using glnlab::RunConfig;

struct Bound {
    CLI::Option* opt;
    std::function<void(const Json&)> apply;
};

template <class T>
Bound bind_flag(CLI::App& app, const std::string& flag, T& field, const std::string& help) {
    CLI::Option* opt = app.add_option(flag, field, help);
    return {opt, [&field](const Json& j) { field = j.get<T>(); }};
}

// Keys in a config file mirror the long flag names with '-' as '_'.
void apply_config(const Json& j, const std::map<std::string, Bound>& bound) {
    if (!j.is_object()) throw glnlab::EncodingError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        const auto it = bound.find(key);
        if (it == bound.end()) throw glnlab::ParameterError("unknown config key '" + key + "'");
        if (it->second.opt->count() == 0) it->second.apply(value);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glnlab: verification lab for the surjectivity counterexample"};
    app.require_subcommand(1);

    const char* const names[] = {"verify", "trend", "fat", "fourier", "bs", "adaptive"};
    const char* const about[] = {
        "exact suite at m <= 2",
        "Monte Carlo image-size and predictor trends",
        "fat content of a Boolean function by linear programming",
        "Fourier spectrum and truncation errors",
        "block-sensitivity certificates",
        "bias of adaptive DNF-query strategies",
    };

    RunConfig cfg;
    std::string config_path;
    std::uint64_t seed = cfg.seed;
    std::map<std::string, std::map<std::string, Bound>> per_command;
    bool tamper = false;

    for (std::size_t c = 0; c < std::size(names); ++c) {
        CLI::App* sub = app.add_subcommand(names[c], about[c]);
        auto& b = per_command[names[c]];
        b["m"] = bind_flag(*sub, "--m", cfg.m, "bits per coordinate (trend: largest m)");
        b["m_min"] = bind_flag(*sub, "--m-min", cfg.m_min, "trend: smallest m");
        b["samples"] = bind_flag(*sub, "--samples", cfg.samples, "Monte Carlo sample count");
        b["k"] = bind_flag(*sub, "--k", cfg.k, "largest term size for k-wise checks");
        b["width"] = bind_flag(*sub, "--width", cfg.width, "DNF/query width");
        b["depth"] = bind_flag(*sub, "--depth", cfg.depth, "queries per strategy path");
        b["count"] = bind_flag(*sub, "--count", cfg.count, "number of random instances");
        b["n"] = bind_flag(*sub, "--n", cfg.n, "bits for fat/fourier targets; N for tribes");
        b["term_size"] = bind_flag(*sub, "--term-size", cfg.term_size, "fat: largest term size (0 = n)");
        b["format"] = bind_flag(*sub, "--format", cfg.format, "json or csv");
        b["out"] = bind_flag(*sub, "--out", cfg.out, "write the report here instead of stdout");
        b["target"] = bind_flag(*sub, "--target", cfg.target, "function to analyse");
        b["input"] = bind_flag(*sub, "--input", cfg.input, "word (bs) or truth vector (fat/fourier)");
        b["strategy"] = bind_flag(*sub, "--strategy", cfg.strategy, "strategy JSON file");
        b["format"].opt->check(CLI::IsMember({"json", "csv"}));
        b["seed"] = bind_flag(*sub, "--seed", seed, "generator seed");
        sub->add_option("--config", config_path, "JSON config file; flags override it");
        sub->add_flag("--tamper", tamper, "")->group("");  // test hook
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        cfg.command = chosen->get_name();
        const Json file = config_path.empty() ? Json::object() : glnlab::load_json_file(config_path);
        auto& bound = per_command[cfg.command];
        apply_config(file, bound);
        cfg.seed = seed;
        cfg.seed_given = bound["seed"].opt->count() > 0 || file.contains("seed");
        cfg.tamper_skip_resample = tamper;
        // trend sweeps up to m = 10 unless told otherwise
        if (cfg.command == "trend" && bound["m"].opt->count() == 0 && !file.contains("m")) cfg.m = 10;
        glnlab::resolve_seed(cfg);

        const glnlab::Report rep = glnlab::run_command(cfg);
        const std::string text = glnlab::render(rep, cfg.format);
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out) throw glnlab::ParameterError("cannot write " + cfg.out);
            out << text;
        }
        return rep.verdict() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "glnlab: " << e.what() << "\n";
        return 2;
    }
}
