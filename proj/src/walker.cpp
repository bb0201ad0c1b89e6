#include "fluxwalk/walker.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fluxwalk/detail/parallel.hpp"

namespace fluxwalk {

void WalkConfig::validate() const {
    Dimension checked(dim);  // range check
    check_sample_mode(mode, dim);
    if (radius <= 0.0) throw std::invalid_argument("WalkConfig: radius must be positive");
    if (dt <= 0.0) throw std::invalid_argument("WalkConfig: dt must be positive");
    if (dt >= radius / 10.0)
        throw std::invalid_argument(
            "WalkConfig: dt must be < radius/10 (one boundary crossing per step)");
    if (steps < 0 || walkers < 0)
        throw std::invalid_argument("WalkConfig: steps and walkers must be nonnegative");
    if (workers < 1) throw std::invalid_argument("WalkConfig: workers must be >= 1");
    if (steps > 0 && walkers > step_budget / std::max<std::int64_t>(steps, 1))
        throw std::invalid_argument("WalkConfig: steps * walkers exceeds step budget");
}

Collision collision_point(const VecN& p, const VecN& d, double radius) {
    const double pd = p.dot(d);
    const double disc = pd * pd + radius * radius - p.norm_sq();
    if (disc < 0.0) {
        std::ostringstream msg;
        msg << "collision_point: negative discriminant " << disc
            << " (|p| = " << p.norm() << ", r = " << radius << ")";
        throw std::logic_error(msg.str());
    }
    const double tau = -pd + std::sqrt(disc);
    Collision c{tau, p};
    c.point.add_scaled(d, tau);
    return c;
}

namespace {

// Core step, shared by the public reflect_step and the trial kernel.
// Assumes the config-level dt/radius checks already ran.
inline StepResult do_step(const VecN& p, const VecN& d, double dt, double radius) {
    StepResult out;
    VecN q = p;
    q.add_scaled(d, dt);
    if (q.norm_sq() < radius * radius) {
        out.state = WalkerState{q, d};
        return out;
    }
    const Collision c = collision_point(p, d, radius);
    VecN normal = c.point;
    normal *= 1.0 / radius;

    VecN folded = q;
    const double qn = (q - c.point).dot(normal);
    folded.add_scaled(normal, -2.0 * qn);
    VecN reflected = d;
    reflected.add_scaled(normal, -2.0 * d.dot(normal));

    const double fn = folded.norm();
    if (fn >= radius) folded *= radius * (1.0 - 1e-12) / fn;  // grazing-fold edge

    out.state = WalkerState{folded, reflected};
    out.hit = true;
    out.boundary_tau = c.tau;
    out.boundary_point = c.point;
    return out;
}

struct WalkerResult {
    std::uint64_t hits = 0;
};

// One walker's full trajectory. Flight bookkeeping: the step that reaches
// the boundary at ray parameter tau closes the current flight with
// flight + tau and opens the next with dt - tau, so recorded samples are
// exact boundary-to-boundary path lengths. The first partial flight is
// discarded and the last flight stays open.
WalkerResult simulate_walker(const WalkConfig& cfg, std::int64_t walker_index,
                             std::vector<double>& samples) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(walker_index));
    const Dimension dim(cfg.dim);
    const double r = cfg.radius;
    const double r_sq = r * r;
    const int n = cfg.dim;
    const std::size_t sn = static_cast<std::size_t>(n);

    std::array<double, kMaxDimension> p{};
    std::array<double, kMaxDimension> d{};
    detail::sample_point_in_ball_into({p.data(), sn}, r, rng, cfg.mode);
    detail::sample_unit_direction_into({d.data(), sn}, rng, cfg.mode);

    WalkerResult res;
    double flight = 0.0;
    bool boundary_started = false;

    for (std::int64_t step = 0; step < cfg.steps; ++step) {
        if (cfg.rescatter) detail::sample_unit_direction_into({d.data(), sn}, rng, cfg.mode);

        std::array<double, kMaxDimension> q;
        double q_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            q[i] = p[i] + cfg.dt * d[i];
            q_sq += q[i] * q[i];
        }
        if (q_sq < r_sq) {
            for (int i = 0; i < n; ++i) p[i] = q[i];
            flight += cfg.dt;
            continue;
        }

        // Boundary contact: solve |p + tau d| = r, then fold across the
        // tangent plane at f.
        double pd = 0.0, p_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            pd += p[i] * d[i];
            p_sq += p[i] * p[i];
        }
        const double disc = pd * pd + r_sq - p_sq;
        const double tau = std::min(std::max(-pd + std::sqrt(std::max(disc, 0.0)), 0.0), cfg.dt);

        if (boundary_started)
            samples.push_back(flight + tau);
        else
            boundary_started = true;
        flight = cfg.dt - tau;

        double qf_dot_n = 0.0, d_dot_n = 0.0;
        std::array<double, kMaxDimension> normal;
        for (int i = 0; i < n; ++i) {
            const double f = p[i] + tau * d[i];
            normal[i] = f / r;
            qf_dot_n += (q[i] - f) * normal[i];
            d_dot_n += d[i] * normal[i];
        }
        double folded_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            q[i] -= 2.0 * qf_dot_n * normal[i];
            d[i] -= 2.0 * d_dot_n * normal[i];
            folded_sq += q[i] * q[i];
        }
        if (folded_sq >= r_sq) {
            const double pull = r * (1.0 - 1e-12) / std::sqrt(folded_sq);
            for (int i = 0; i < n; ++i) q[i] *= pull;
        }
        for (int i = 0; i < n; ++i) p[i] = q[i];
        ++res.hits;

#ifndef NDEBUG
        double check = 0.0;
        for (int i = 0; i < n; ++i) check += p[i] * p[i];
        assert(check <= r_sq);
#endif
    }
    return res;
}

}  // namespace

StepResult reflect_step(const WalkerState& state, double dt, double radius) {
    if (dt <= 0.0 || dt >= radius / 10.0)
        throw std::invalid_argument("reflect_step: dt must lie in (0, radius/10)");
    return do_step(state.position, state.direction, dt, radius);
}

WalkStats run_trial(const WalkConfig& cfg) {
    cfg.validate();
    const BallGeometry geom(Dimension(cfg.dim), cfg.radius);

    WalkStats stats;
    stats.total_time = static_cast<double>(cfg.steps) * cfg.dt;
    stats.total_in_region_path = stats.total_time * static_cast<double>(cfg.walkers);
    if (cfg.walkers == 0 || cfg.steps == 0) return stats;  // empty run, k_hat stays NaN

    const std::int64_t w_count = cfg.walkers;
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(w_count), 0);
    const int p = static_cast<int>(std::clamp<std::int64_t>(cfg.workers, 1, w_count));
    std::vector<std::vector<double>> chunk_samples(static_cast<std::size_t>(p));

    detail::parallel_chunks(w_count, p, [&](int chunk, std::int64_t lo, std::int64_t hi) {
        auto& samples = chunk_samples[static_cast<std::size_t>(chunk)];
        for (std::int64_t w = lo; w < hi; ++w)
            hits[static_cast<std::size_t>(w)] = simulate_walker(cfg, w, samples).hits;
    });

    // Reductions in walker order: integer hit sum, then chunk buffers
    // concatenated in chunk (== walker) order.
    std::uint64_t total = 0;
    for (const auto h : hits) total += h;
    stats.boundary_hits = total;
    std::size_t sample_count = 0;
    for (const auto& s : chunk_samples) sample_count += s.size();
    stats.in_region_path_samples.reserve(sample_count);
    for (const auto& s : chunk_samples)
        stats.in_region_path_samples.insert(stats.in_region_path_samples.end(), s.begin(),
                                            s.end());

    if (total > 0) {
        const double per_walker_scale =
            geom.volume / (geom.surface_area * stats.total_time);
        stats.k_hat = static_cast<double>(total) / static_cast<double>(w_count) *
                      per_walker_scale;
        if (w_count > 1) {
            const double mean_hits =
                static_cast<double>(total) / static_cast<double>(w_count);
            double ss = 0.0;
            for (const auto h : hits) {
                const double dev = static_cast<double>(h) - mean_hits;
                ss += dev * dev;
            }
            const double sd = std::sqrt(ss / static_cast<double>(w_count - 1));
            stats.k_stderr = per_walker_scale * sd / std::sqrt(static_cast<double>(w_count));
        }
        stats.mean_path_hat = geom.volume / (stats.k_hat * geom.surface_area);
        stats.mean_path_empirical =
            stats.total_in_region_path / static_cast<double>(total);
    }
    if (!stats.in_region_path_samples.empty()) {
        double sum = 0.0;
        for (const double v : stats.in_region_path_samples) sum += v;
        stats.path_sample_mean = sum / static_cast<double>(stats.in_region_path_samples.size());
    }
    return stats;
}

double estimate_mean_path(const WalkStats& stats, const BallGeometry& geom) {
    if (!stats.k_defined())
        throw std::runtime_error("estimate_mean_path: no boundary hits recorded");
    return geom.volume / (stats.k_hat * geom.surface_area);
}

}  // namespace fluxwalk
