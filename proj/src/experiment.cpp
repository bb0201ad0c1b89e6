#include "fluxwalk/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fluxwalk/chords.hpp"
#include "fluxwalk/geometry.hpp"
#include "fluxwalk/sphere_surface.hpp"
#include "fluxwalk/walker.hpp"

namespace fluxwalk {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_g9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

WalkConfig make_walk_config(const ExperimentConfig& cfg, int dim, std::uint64_t trial_seed) {
    WalkConfig wc;
    wc.dim = dim;
    wc.radius = cfg.radius;
    wc.dt = cfg.dt;
    wc.steps = cfg.steps;
    wc.walkers = cfg.walkers;
    wc.seed = trial_seed;
    wc.mode = cfg.sample_mode;
    wc.rescatter = true;
    wc.workers = cfg.workers;
    return wc;
}

}  // namespace

const char* to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::ball_walk: return "ball_walk";
        case ExperimentMode::chords: return "chords";
        case ExperimentMode::equivalence: return "equivalence";
        case ExperimentMode::s2_cap: return "s2_cap";
        case ExperimentMode::speed: return "speed";
    }
    return "?";
}

const char* to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
        case OutputFormat::table: return "table";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (trials < 0) throw std::invalid_argument("trials must be >= 0");
    if (walkers < 1) throw std::invalid_argument("walkers must be >= 1");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (radius <= 0.0) throw std::invalid_argument("radius must be positive");
    if (dt <= 0.0 || dt >= radius / 10.0)
        throw std::invalid_argument("dt must lie in (0, radius/10)");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (mode == ExperimentMode::s2_cap) {
        if (!theta) throw std::invalid_argument("s2_cap mode requires --theta");
        if (!(*theta > 0.0) || *theta > kPi / 2.0)
            throw std::invalid_argument("theta must lie in (0, pi/2]");
        if (dt >= radius * *theta / 10.0)
            throw std::invalid_argument("s2_cap mode requires dt < radius*theta/10");
    } else {
        if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
        for (const int d : dims) {
            Dimension checked(d);
            check_sample_mode(sample_mode, d);
        }
    }
}

std::uint64_t derive_trial_seed(std::uint64_t base_seed, int dimension, int trial_index) {
    std::uint64_t h = detail::mix64(base_seed + detail::kGoldenGamma);
    h = detail::mix64(h ^ (static_cast<std::uint64_t>(dimension) * detail::kGoldenGamma));
    h = detail::mix64(h ^ (static_cast<std::uint64_t>(trial_index) * 0xc2b2ae3d27d4eb4fULL));
    return h;
}

double estimate_speed(const SpeedEstimateInput& input) {
    if (input.trapped_count <= 0.0 || input.density <= 0.0 || input.trap_area <= 0.0 ||
        input.duration <= 0.0)
        throw std::domain_error("estimate_speed: all inputs must be positive");
    const double k = theoretical_k(Dimension(input.dimension));
    return input.trapped_count / (k * input.density * input.trap_area * input.duration);
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg,
                                        const TrialCallback& on_trial) {
    cfg.validate();

    // s2_cap always runs on S^2 and reports dimension 2.
    const std::vector<int> dims =
        cfg.mode == ExperimentMode::s2_cap ? std::vector<int>{2} : cfg.dims;

    std::vector<TrialRecord> records;
    records.reserve(dims.size() * static_cast<std::size_t>(cfg.trials));

    for (const int dim : dims) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t trial_seed = derive_trial_seed(cfg.seed, dim, trial);
            const auto t0 = std::chrono::steady_clock::now();

            TrialRecord rec;
            rec.mode = cfg.mode;
            rec.dimension = dim;
            rec.trial_index = trial;
            rec.walkers = cfg.walkers;
            rec.steps = cfg.steps;
            rec.dt = cfg.dt;
            rec.radius = cfg.radius;
            rec.seed = trial_seed;

            switch (cfg.mode) {
                case ExperimentMode::ball_walk:
                case ExperimentMode::speed: {
                    const WalkStats stats = run_trial(make_walk_config(cfg, dim, trial_seed));
                    const BallGeometry geom((Dimension(dim)), cfg.radius);
                    rec.boundary_hits = stats.boundary_hits;
                    rec.k_hat = stats.k_hat;
                    rec.k_theory = theoretical_k(Dimension(dim));
                    rec.mean_path_hat = stats.mean_path_hat;
                    rec.mean_chord_theory = geom.mean_chord;
                    break;
                }
                case ExperimentMode::chords: {
                    const BallGeometry geom((Dimension(dim)), cfg.radius);
                    RngStream rng(trial_seed, 0);
                    const ChordStats stats =
                        mc_mean_chord(geom, ChordMethod::parallel_class, cfg.walkers, rng);
                    rec.boundary_hits = static_cast<std::uint64_t>(stats.samples);
                    // K implied by the chord mean through K = V / (A E(C)).
                    rec.k_hat = geom.volume / (geom.surface_area * stats.mean);
                    rec.k_theory = theoretical_k(Dimension(dim));
                    rec.mean_path_hat = stats.mean;
                    rec.mean_chord_theory = geom.mean_chord;
                    break;
                }
                case ExperimentMode::equivalence: {
                    const EquivalenceReport rep =
                        walk_chord_equivalence(make_walk_config(cfg, dim, trial_seed));
                    rec.boundary_hits = rep.walk.boundary_hits;
                    rec.k_hat = rep.walk.k_hat;
                    rec.k_theory = theoretical_k(Dimension(dim));
                    rec.mean_path_hat = rep.walk_mean_path;
                    rec.mean_chord_theory = rep.analytic_mean_chord;
                    break;
                }
                case ExperimentMode::s2_cap: {
                    const CapSpec cap(cfg.radius, *cfg.theta);
                    S2WalkConfig sc{cap, cfg.dt, cfg.steps, cfg.walkers, trial_seed,
                                    cfg.workers};
                    const WalkStats stats = s2_walk_trial(sc);
                    rec.boundary_hits = stats.boundary_hits;
                    rec.k_hat = stats.k_hat;
                    rec.k_theory = surface_flux_k();
                    rec.mean_path_hat = stats.mean_path_empirical;
                    rec.mean_chord_theory = cap_mean_chord(cap);
                    break;
                }
            }
            rec.rel_err = std::abs(rec.k_hat - rec.k_theory) / rec.k_theory;

            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            records.push_back(rec);
            if (on_trial) on_trial(rec, elapsed);
        }
    }
    return records;
}

namespace {

void emit_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    char buf[512];
    for (const TrialRecord& r : records) {
        std::snprintf(buf, sizeof(buf),
                      "%s,%d,%d,%lld,%lld,%s,%s,%llu,%llu,%s,%s,%s,%s,%s,%s\n",
                      to_string(r.mode), r.dimension, r.trial_index,
                      static_cast<long long>(r.walkers), static_cast<long long>(r.steps),
                      fmt_g9(r.dt).c_str(), fmt_g9(r.radius).c_str(),
                      static_cast<unsigned long long>(r.seed),
                      static_cast<unsigned long long>(r.boundary_hits),
                      fmt_g9(r.k_hat).c_str(), fmt_g9(r.k_theory).c_str(),
                      fmt_g9(r.rel_err).c_str(), fmt_g9(r.mean_path_hat).c_str(),
                      fmt_g9(r.mean_chord_theory).c_str(),
                      fmt_g9(r.wall_time_seconds).c_str());
        out << buf;
    }
}

void emit_json(const std::vector<TrialRecord>& records, std::ostream& out) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const TrialRecord& r : records) {
        nlohmann::ordered_json obj;
        obj["mode"] = to_string(r.mode);
        obj["dimension"] = r.dimension;
        obj["trial"] = r.trial_index;
        obj["walkers"] = r.walkers;
        obj["steps"] = r.steps;
        obj["dt"] = r.dt;
        obj["radius"] = r.radius;
        obj["seed"] = r.seed;
        obj["hits"] = r.boundary_hits;
        obj["k_hat"] = r.k_hat;
        obj["k_theory"] = r.k_theory;
        obj["rel_err"] = r.rel_err;
        obj["mean_path_hat"] = r.mean_path_hat;
        obj["mean_chord_theory"] = r.mean_chord_theory;
        obj["wall_time_s"] = r.wall_time_seconds;
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

void emit_table(const std::vector<TrialRecord>& records, std::ostream& out) {
    // Column per dimension in first-appearance order, k_hat per trial row,
    // theory as the final row.
    std::vector<int> dims;
    int max_trial = -1;
    for (const TrialRecord& r : records) {
        if (std::find(dims.begin(), dims.end(), r.dimension) == dims.end())
            dims.push_back(r.dimension);
        max_trial = std::max(max_trial, r.trial_index);
    }
    const int width = 16;
    auto cell = [&](const std::string& s) {
        out << s;
        for (int i = static_cast<int>(s.size()); i < width; ++i) out << ' ';
    };
    for (const int d : dims) cell("dimension " + std::to_string(d));
    out << '\n';
    for (int t = 0; t <= max_trial; ++t) {
        for (const int d : dims) {
            std::string s = "-";
            for (const TrialRecord& r : records)
                if (r.dimension == d && r.trial_index == t) {
                    s = fmt_g9(r.k_hat);
                    break;
                }
            cell(s);
        }
        out << '\n';
    }
    for (const int d : dims) {
        std::string s = "-";
        for (const TrialRecord& r : records)
            if (r.dimension == d) {
                s = fmt_g9(r.k_theory);
                break;
            }
        cell(s);
    }
    out << '\n';
}

}  // namespace

void emit(const std::vector<TrialRecord>& records, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::csv: emit_csv(records, out); break;
        case OutputFormat::json: emit_json(records, out); break;
        case OutputFormat::table: emit_table(records, out); break;
    }
    if (!out) throw std::runtime_error("emit: write failed");
}

std::string emit_to_string(const std::vector<TrialRecord>& records, OutputFormat format) {
    std::ostringstream ss;
    emit(records, format, ss);
    return ss.str();
}

std::vector<TrialRecord> parse_records_json(const std::string& text) {
    const auto arr = nlohmann::json::parse(text);
    std::vector<TrialRecord> records;
    records.reserve(arr.size());
    for (const auto& obj : arr) {
        TrialRecord r;
        const std::string mode = obj.at("mode").get<std::string>();
        if (mode == "ball_walk") r.mode = ExperimentMode::ball_walk;
        else if (mode == "chords") r.mode = ExperimentMode::chords;
        else if (mode == "equivalence") r.mode = ExperimentMode::equivalence;
        else if (mode == "s2_cap") r.mode = ExperimentMode::s2_cap;
        else if (mode == "speed") r.mode = ExperimentMode::speed;
        else throw std::invalid_argument("parse_records_json: unknown mode " + mode);
        r.dimension = obj.at("dimension").get<int>();
        r.trial_index = obj.at("trial").get<int>();
        r.walkers = obj.at("walkers").get<std::int64_t>();
        r.steps = obj.at("steps").get<std::int64_t>();
        r.dt = obj.at("dt").get<double>();
        r.radius = obj.at("radius").get<double>();
        r.seed = obj.at("seed").get<std::uint64_t>();
        r.boundary_hits = obj.at("hits").get<std::uint64_t>();
        auto num = [&](const char* key) {
            const auto& v = obj.at(key);
            return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
        };
        r.k_hat = num("k_hat");
        r.k_theory = num("k_theory");
        r.rel_err = num("rel_err");
        r.mean_path_hat = num("mean_path_hat");
        r.mean_chord_theory = num("mean_chord_theory");
        r.wall_time_seconds = num("wall_time_s");
        records.push_back(r);
    }
    return records;
}

}  // namespace fluxwalk
