#pragma once

#include <array>
#include <cstdint>

#include "fluxwalk/geometry.hpp"
#include "fluxwalk/rng.hpp"
#include "fluxwalk/walker.hpp"

namespace fluxwalk {

// The three classical random-chord measures. parallel_class fixes a
// direction and draws the chord's foot uniformly over the normal section;
// it is defined for every dimension. endpoints and midpoint are the two
// other Bertrand constructions and are defined only on the disk (n = 2).
enum class ChordMethod { parallel_class, endpoints, midpoint };

const char* to_string(ChordMethod method);

inline constexpr int kChordHistogramBins = 64;

struct ChordStats {
    ChordMethod method = ChordMethod::parallel_class;
    std::int64_t samples = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double radius = 0.0;
    // Uniform bins over [0, 2r]; counts sum to samples.
    std::array<std::uint64_t, kChordHistogramBins> histogram{};
};

// Chord length for a parallel-class foot at distance foot_norm from the
// center: 2 * sqrt(r^2 - |y|^2).
double parallel_chord_length(double radius, double foot_norm);

// One chord length under the given measure. parallel_class samples the foot
// uniformly in the (n-1)-ball (every chord of the 1-ball is the whole
// interval, length 2r); endpoints draws two independent uniform boundary
// angles; midpoint draws a uniform point of the disk as the chord midpoint.
double sample_chord(const BallGeometry& geom, ChordMethod method, RngStream& rng);

ChordStats mc_mean_chord(const BallGeometry& geom, ChordMethod method,
                         std::int64_t samples, RngStream& rng);

struct EquivalenceReport {
    int dim = 0;
    double radius = 0.0;
    double analytic_mean_chord = 0.0;
    double walk_mean_path = 0.0;  // per-crossing mean path from the trial
    double walk_se = 0.0;
    double chord_mc_mean = 0.0;
    double chord_mc_se = 0.0;
    double rel_dev_walk_vs_analytic = 0.0;
    double rel_dev_walk_vs_chords = 0.0;
    bool walk_within_5se_of_analytic = false;
    bool walk_within_5se_of_chords = false;
    WalkStats walk;
    ChordStats chords;
};

// Runs the ball walk (rescatter required) and a parallel-class chord Monte
// Carlo, then compares the walk's mean in-region path with both the chord
// estimate and the closed form, reporting relative deviations and whether
// each comparison sits inside its 5-standard-error band. Throws
// std::runtime_error when the walk completes no crossing.
EquivalenceReport walk_chord_equivalence(const WalkConfig& config,
                                         std::int64_t chord_samples = 1'000'000);

}  // namespace fluxwalk
