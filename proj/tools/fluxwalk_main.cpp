#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluxwalk/experiment.hpp"

namespace {

// "--dims 1,3,5-8" -> {1, 3, 5, 6, 7, 8}
std::vector<int> parse_dims(const std::string& spec) {
    std::vector<int> dims;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) throw std::invalid_argument("empty dims entry");
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
            dims.push_back(std::stoi(part));
        } else {
            const int lo = std::stoi(part.substr(0, dash));
            const int hi = std::stoi(part.substr(dash + 1));
            if (hi < lo) throw std::invalid_argument("descending dims range: " + part);
            for (int d = lo; d <= hi; ++d) dims.push_back(d);
        }
    }
    if (dims.empty()) throw std::invalid_argument("dims list is empty");
    return dims;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fluxwalk: random-walk and random-chord estimation of the "
        "boundary-flux constant K of n-balls and spherical caps"};

    fluxwalk::ExperimentConfig cfg;
    std::string dims_spec = "3";
    double theta = 0.0;
    std::string out_path;

    const std::map<std::string, fluxwalk::ExperimentMode> mode_names{
        {"ball_walk", fluxwalk::ExperimentMode::ball_walk},
        {"chords", fluxwalk::ExperimentMode::chords},
        {"equivalence", fluxwalk::ExperimentMode::equivalence},
        {"s2_cap", fluxwalk::ExperimentMode::s2_cap},
        {"speed", fluxwalk::ExperimentMode::speed}};
    const std::map<std::string, fluxwalk::SampleMode> sample_names{
        {"rejection", fluxwalk::SampleMode::rejection},
        {"direct", fluxwalk::SampleMode::direct}};
    const std::map<std::string, fluxwalk::OutputFormat> format_names{
        {"csv", fluxwalk::OutputFormat::csv},
        {"json", fluxwalk::OutputFormat::json},
        {"table", fluxwalk::OutputFormat::table}};

    app.add_option("--mode", cfg.mode, "Experiment mode")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    app.add_option("--dims", dims_spec, "Dimensions, comma list or range (e.g. 1-10 or 2,3,5)");
    app.add_option("--trials", cfg.trials, "Trials per dimension");
    app.add_option("--walkers", cfg.walkers, "Walkers per trial (chords mode: samples)");
    app.add_option("--steps", cfg.steps, "Steps per trial");
    app.add_option("--dt", cfg.dt, "Step length (speed is 1)");
    app.add_option("--radius", cfg.radius, "Ball / sphere radius");
    app.add_option("--theta", theta, "Cap colatitude in radians (s2_cap mode)");
    app.add_option("--seed", cfg.seed, "Base seed; per-trial seeds derive from it");
    app.add_option("--sample-mode", cfg.sample_mode, "Point/direction sampler")
        ->transform(CLI::CheckedTransformer(sample_names, CLI::ignore_case));
    app.add_option("--workers", cfg.workers, "Worker threads (never changes results)");
    app.add_option("--format", cfg.output, "Output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    app.add_option("--out", out_path, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.dims = parse_dims(dims_spec);
        if (theta > 0.0) cfg.theta = theta;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "fluxwalk: " << e.what() << '\n';
        return 2;
    }

    try {
        const auto records = fluxwalk::run_experiment(
            cfg, [](const fluxwalk::TrialRecord& r, double elapsed) {
                std::fprintf(stderr, "%s d=%d trial=%d k_hat=%.6g rel_err=%.3g%% (%.2fs)\n",
                             fluxwalk::to_string(r.mode), r.dimension, r.trial_index, r.k_hat,
                             100.0 * r.rel_err, elapsed);
            });

        if (out_path.empty()) {
            fluxwalk::emit(records, cfg.output, std::cout);
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output path: " + out_path);
            fluxwalk::emit(records, cfg.output, file);
            if (!file) throw std::runtime_error("write failed: " + out_path);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fluxwalk: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fluxwalk: " << e.what() << '\n';
        return 3;
    }
}
