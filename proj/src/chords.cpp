#include "fluxwalk/chords.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fluxwalk/sampling.hpp"

namespace fluxwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Auxiliary stream id reserved for chord sampling so it never collides with
// walker streams (ids 0..walkers-1).
constexpr std::uint64_t kChordStreamId = 0x8000000000000000ULL;

void check_method(ChordMethod method, int dim) {
    if (method != ChordMethod::parallel_class && dim != 2)
        throw std::invalid_argument(
            "endpoints/midpoint chord methods are defined only for n = 2");
}

}  // namespace

const char* to_string(ChordMethod method) {
    switch (method) {
        case ChordMethod::parallel_class: return "parallel_class";
        case ChordMethod::endpoints: return "endpoints";
        case ChordMethod::midpoint: return "midpoint";
    }
    return "?";
}

double parallel_chord_length(double radius, double foot_norm) {
    return 2.0 * std::sqrt(std::max(radius * radius - foot_norm * foot_norm, 0.0));
}

double sample_chord(const BallGeometry& geom, ChordMethod method, RngStream& rng) {
    check_method(method, geom.dim);
    const double r = geom.radius;
    switch (method) {
        case ChordMethod::parallel_class: {
            if (geom.dim == 1) return 2.0 * r;  // the foot lives in a point
            const VecN foot =
                sample_point_in_ball(Dimension(geom.dim - 1), r, rng, SampleMode::direct);
            return parallel_chord_length(r, foot.norm());
        }
        case ChordMethod::endpoints: {
            const double a = kTwoPi * rng.next_unit();
            const double b = kTwoPi * rng.next_unit();
            return 2.0 * r * std::abs(std::sin(0.5 * (a - b)));
        }
        case ChordMethod::midpoint: {
            const VecN mid = sample_point_in_ball(Dimension(2), r, rng, SampleMode::direct);
            return parallel_chord_length(r, mid.norm());
        }
    }
    throw std::logic_error("sample_chord: unreachable");
}

ChordStats mc_mean_chord(const BallGeometry& geom, ChordMethod method,
                         std::int64_t samples, RngStream& rng) {
    check_method(method, geom.dim);
    if (samples < 1) throw std::invalid_argument("mc_mean_chord: samples must be >= 1");

    ChordStats stats;
    stats.method = method;
    stats.samples = samples;
    stats.radius = geom.radius;

    const double bin_scale = kChordHistogramBins / (2.0 * geom.radius);
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double len = sample_chord(geom, method, rng);
        sum += len;
        sum_sq += len * len;
        const int bin = std::min(static_cast<int>(len * bin_scale), kChordHistogramBins - 1);
        ++stats.histogram[static_cast<std::size_t>(bin)];
    }
    stats.mean = sum / static_cast<double>(samples);
    if (samples > 1) {
        const double var =
            std::max(sum_sq - sum * sum / static_cast<double>(samples), 0.0) /
            static_cast<double>(samples - 1);
        stats.std_error = std::sqrt(var / static_cast<double>(samples));
    }
    return stats;
}

EquivalenceReport walk_chord_equivalence(const WalkConfig& config,
                                         std::int64_t chord_samples) {
    if (!config.rescatter)
        throw std::invalid_argument("walk_chord_equivalence requires rescatter=true");
    config.validate();

    EquivalenceReport rep;
    rep.dim = config.dim;
    rep.radius = config.radius;

    rep.walk = run_trial(config);
    if (!rep.walk.k_defined())
        throw std::runtime_error("walk_chord_equivalence: no completed crossings");

    const BallGeometry geom(Dimension(config.dim), config.radius);
    rep.analytic_mean_chord = geom.mean_chord;
    rep.walk_mean_path = rep.walk.mean_path_empirical;
    // Delta method on l = V/(kA): se(l)/l = se(k)/k.
    rep.walk_se = rep.walk_mean_path * (rep.walk.k_stderr / rep.walk.k_hat);

    RngStream chord_rng(config.seed, kChordStreamId);
    rep.chords = mc_mean_chord(geom, ChordMethod::parallel_class, chord_samples, chord_rng);
    rep.chord_mc_mean = rep.chords.mean;
    rep.chord_mc_se = rep.chords.std_error;

    rep.rel_dev_walk_vs_analytic =
        std::abs(rep.walk_mean_path - rep.analytic_mean_chord) / rep.analytic_mean_chord;
    rep.rel_dev_walk_vs_chords =
        std::abs(rep.walk_mean_path - rep.chord_mc_mean) / rep.analytic_mean_chord;
    rep.walk_within_5se_of_analytic =
        std::abs(rep.walk_mean_path - rep.analytic_mean_chord) <= 5.0 * rep.walk_se;
    rep.walk_within_5se_of_chords =
        std::abs(rep.walk_mean_path - rep.chord_mc_mean) <=
        5.0 * std::sqrt(rep.walk_se * rep.walk_se + rep.chord_mc_se * rep.chord_mc_se);
    return rep;
}

}  // namespace fluxwalk
