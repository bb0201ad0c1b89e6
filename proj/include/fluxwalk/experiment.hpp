#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fluxwalk/sampling.hpp"

namespace fluxwalk {

enum class ExperimentMode { ball_walk, chords, equivalence, s2_cap, speed };
enum class OutputFormat { csv, json, table };

const char* to_string(ExperimentMode mode);
const char* to_string(OutputFormat format);

// One run of the harness. Desk-scale defaults (walkers=20000, steps=2000,
// dt=0.01, radius=1) reproduce a data-table column per dimension in the dims
// list when trials=20.
struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::ball_walk;
    std::vector<int> dims = {3};  // ignored by s2_cap, which is always on S^2
    int trials = 1;
    std::int64_t walkers = 20000;  // chords mode: chord samples per trial
    std::int64_t steps = 2000;
    double dt = 0.01;
    double radius = 1.0;
    std::optional<double> theta;  // required for s2_cap, radians in (0, pi/2]
    std::uint64_t seed = 1;
    SampleMode sample_mode = SampleMode::direct;
    int workers = 1;
    OutputFormat output = OutputFormat::csv;

    void validate() const;  // throws std::invalid_argument
};

// One output row. Records are a pure function of the configuration:
// wall_time_seconds stays 0 in the record so emitted artifacts are
// byte-reproducible; measured per-trial seconds travel through the
// run_experiment callback instead.
struct TrialRecord {
    ExperimentMode mode = ExperimentMode::ball_walk;
    int dimension = 0;
    int trial_index = 0;
    std::int64_t walkers = 0;
    std::int64_t steps = 0;
    double dt = 0.0;
    double radius = 0.0;
    std::uint64_t seed = 0;  // per-trial derived seed
    std::uint64_t boundary_hits = 0;
    double k_hat = 0.0;
    double k_theory = 0.0;
    double rel_err = 0.0;
    double mean_path_hat = 0.0;
    double mean_chord_theory = 0.0;
    double wall_time_seconds = 0.0;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Pure function of (base_seed, dimension, trial): reordering dims in the
// config never changes a trial's stream, only the output order.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, int dimension, int trial_index);

using TrialCallback = std::function<void(const TrialRecord&, double elapsed_seconds)>;

// Executes trials sequentially per (dimension, trial); walker-level
// parallelism follows config.workers. Returns records in (dimension, trial)
// order. The optional callback fires after each trial with the measured
// wall-clock seconds.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config,
                                        const TrialCallback& on_trial = {});

struct SpeedEstimateInput {
    double trapped_count = 0.0;  // m
    double density = 0.0;        // rho, count per unit volume
    double trap_area = 0.0;      // A
    double duration = 0.0;       // t
    int dimension = 3;
};

// Inverts m = K rho c A t: returns c = m / (K_n rho A t).
double estimate_speed(const SpeedEstimateInput& input);

inline constexpr char kCsvHeader[] =
    "mode,dimension,trial,walkers,steps,dt,radius,seed,hits,k_hat,k_theory,"
    "rel_err,mean_path_hat,mean_chord_theory,wall_time_s";

// csv: pinned header above, one row per record, floats at 9 significant
// digits, UNIX newlines. json: array of objects with the same field names.
// table: dimensions as columns, trials as rows, theory as the final row.
void emit(const std::vector<TrialRecord>& records, OutputFormat format, std::ostream& out);
std::string emit_to_string(const std::vector<TrialRecord>& records, OutputFormat format);

// Parses what emit(..., json, ...) wrote.
std::vector<TrialRecord> parse_records_json(const std::string& text);

}  // namespace fluxwalk
