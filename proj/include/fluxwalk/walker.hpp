#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "fluxwalk/geometry.hpp"
#include "fluxwalk/sampling.hpp"
#include "fluxwalk/vec.hpp"

namespace fluxwalk {

struct WalkerState {
    VecN position;   // |position| <= r after every resolved step
    VecN direction;  // unit norm
};

// One trial of the scattering walk in an n-ball with specular reflection.
// Speed is fixed at 1, so dt is both the step length and the step duration;
// dt < radius/10 guarantees at most one boundary crossing per step.
struct WalkConfig {
    int dim = 3;
    double radius = 1.0;
    double dt = 0.01;
    std::int64_t steps = 2000;
    std::int64_t walkers = 20000;
    std::uint64_t seed = 1;
    SampleMode mode = SampleMode::direct;
    bool rescatter = true;  // resample every direction every step
    // Walker partitions for threading. Each walker owns RngStream(seed,
    // walker_index) and all reductions run in walker order, so results are
    // bitwise identical for any worker count.
    int workers = 1;
    std::int64_t step_budget = 1'000'000'000'000;  // cap on steps * walkers

    void validate() const;  // throws std::invalid_argument
};

struct WalkStats {
    std::uint64_t boundary_hits = 0;
    double total_time = 0.0;  // steps * dt

    // Completed boundary-to-boundary flight lengths in walker order. Each
    // walker's first partial flight (started mid-region) and unfinished last
    // flight are excluded, so these are full crossings only. Window
    // truncation length-biases this list toward short flights; estimates of
    // E(l) should use mean_path_empirical instead.
    std::vector<double> in_region_path_samples;
    // Path length over all walkers including the partial flights. For the
    // reflecting ball this is walkers * steps * dt, since walkers never
    // leave; for cap counting on S^2 it is the measured in-cap arc length.
    double total_in_region_path = 0.0;

    double k_hat = std::numeric_limits<double>::quiet_NaN();
    double k_stderr = std::numeric_limits<double>::quiet_NaN();
    // V / (k_hat * A), the flux estimate of E(l).
    double mean_path_hat = std::numeric_limits<double>::quiet_NaN();
    // total_in_region_path / boundary_hits, the per-crossing mean path. For
    // the ball this coincides with mean_path_hat identically; on S^2 caps
    // the two sides are independent measurements.
    double mean_path_empirical = std::numeric_limits<double>::quiet_NaN();
    // Mean of in_region_path_samples (window-truncated; see above).
    double path_sample_mean = std::numeric_limits<double>::quiet_NaN();

    bool k_defined() const { return boundary_hits > 0; }
};

struct Collision {
    double tau;  // ray parameter of the boundary contact, >= 0
    VecN point;  // p + tau * d, on the sphere
};

// First boundary contact of the ray p + tau*d for |p| <= r and unit d:
// tau = -(p.d) + sqrt((p.d)^2 + r^2 - |p|^2).
Collision collision_point(const VecN& p, const VecN& d, double radius);

struct StepResult {
    WalkerState state;
    bool hit = false;
    double boundary_tau = 0.0;  // valid when hit
    VecN boundary_point;        // valid when hit
};

// Advance one step of length dt. An interior proposal is taken as is; a
// proposal landing outside is folded across the tangent plane at the contact
// point f (n = f/r): position q' = q - 2((q-f).n)n, direction
// d' = d - 2(d.n)n. A fold that still lands on or outside the sphere is
// clamped radially to r(1 - 1e-12).
StepResult reflect_step(const WalkerState& state, double dt, double radius);

// Runs the full trial: walkers start uniform in the ball with uniform
// directions (equilibrium, so no burn-in), step `steps` times, and boundary
// hits accumulate in a 64-bit counter. k_hat = hits * V / (walkers * A *
// steps * dt); k_stderr is the standard error across per-walker hit counts.
WalkStats run_trial(const WalkConfig& config);

// E(l) = V / (k_hat * A). Throws std::runtime_error when the trial recorded
// no boundary hits.
double estimate_mean_path(const WalkStats& stats, const BallGeometry& geom);

}  // namespace fluxwalk
