#include "fluxwalk/sphere_surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fluxwalk/detail/parallel.hpp"

namespace fluxwalk {

namespace {

constexpr double kPi = std::numbers::pi;

double dot3(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void normalize3(Vec3& v) {
    const double inv = 1.0 / std::sqrt(dot3(v, v));
    for (auto& x : v) x *= inv;
}

}  // namespace

CapSpec::CapSpec(double r, double th) : sphere_radius(r), theta(th) {
    if (r <= 0.0) throw std::domain_error("CapSpec: sphere radius must be positive");
    if (!(th > 0.0) || th > kPi / 2.0)
        throw std::domain_error("CapSpec: theta must lie in (0, pi/2]");
}

double cap_volume(const CapSpec& cap) {
    return 2.0 * kPi * cap.sphere_radius * cap.sphere_radius * (1.0 - std::cos(cap.theta));
}

double cap_boundary_length(const CapSpec& cap) {
    return 2.0 * kPi * cap.sphere_radius * std::sin(cap.theta);
}

double cap_mean_chord(const CapSpec& cap) {
    return kPi * cap.sphere_radius * (1.0 - std::cos(cap.theta)) / std::sin(cap.theta);
}

double surface_flux_k() {
    return std::numbers::inv_pi;
}

double geodesic_chord_length(double psi, const CapSpec& cap) {
    if (psi < 0.0 || psi > kPi / 2.0)
        throw std::domain_error("geodesic_chord_length: psi must lie in [0, pi/2]");
    const double sin_psi = std::sin(psi);
    const double cos_theta = std::cos(cap.theta);
    if (sin_psi <= 0.0) return 0.0;
    const double ratio = cos_theta / sin_psi;
    if (ratio >= 1.0) return 0.0;  // the circle misses the cap
    return 2.0 * cap.sphere_radius * std::acos(ratio);
}

S2WalkerState advance_on_great_circle(const S2WalkerState& state, double arc_angle) {
    const double c = std::cos(arc_angle);
    const double s = std::sin(arc_angle);
    S2WalkerState next;
    for (int i = 0; i < 3; ++i) {
        next.position[i] = state.position[i] * c + state.heading[i] * s;
        next.heading[i] = -state.position[i] * s + state.heading[i] * c;
    }
    normalize3(next.position);
    const double drift = dot3(next.heading, next.position);
    for (int i = 0; i < 3; ++i) next.heading[i] -= drift * next.position[i];
    normalize3(next.heading);
    return next;
}

Vec3 sample_point_on_sphere(RngStream& rng) {
    Vec3 p;
    double norm_sq;
    do {
        double spare;
        rng.next_normal_pair(p[0], p[1]);
        rng.next_normal_pair(p[2], spare);
        norm_sq = dot3(p, p);
    } while (norm_sq == 0.0);
    normalize3(p);
    return p;
}

Vec3 sample_tangent_heading(const Vec3& position, RngStream& rng) {
    Vec3 h;
    for (;;) {
        double spare;
        rng.next_normal_pair(h[0], h[1]);
        rng.next_normal_pair(h[2], spare);
        const double along = dot3(h, position);
        for (int i = 0; i < 3; ++i) h[i] -= along * position[i];
        if (dot3(h, h) > 1e-24) break;
    }
    normalize3(h);
    return h;
}

void S2WalkConfig::validate() const {
    if (dt <= 0.0) throw std::invalid_argument("S2WalkConfig: dt must be positive");
    if (dt >= cap.sphere_radius * cap.theta / 10.0)
        throw std::invalid_argument("S2WalkConfig: dt must be < r * theta / 10");
    if (steps < 0 || walkers < 0)
        throw std::invalid_argument("S2WalkConfig: steps and walkers must be nonnegative");
    if (workers < 1) throw std::invalid_argument("S2WalkConfig: workers must be >= 1");
}

namespace {

struct S2WalkerOut {
    std::uint64_t entries = 0;
    double in_cap_arc = 0.0;  // unit-sphere radians
};

// Along one geodesic step the axial coordinate is z(s) = z0 cos s + hz sin s
// = C cos(s - delta); crossings of z = z_cap inside (0, arc) are solved in
// closed form, so a step that both enters and exits near tangency still
// contributes one entry and one exit with exact partial arcs.
S2WalkerOut simulate_surface_walker(const S2WalkConfig& cfg, std::int64_t walker_index,
                                    std::vector<double>& samples) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(walker_index));
    const double r = cfg.cap.sphere_radius;
    const double z_cap = std::cos(cfg.cap.theta);
    const double arc = cfg.dt / r;
    const double cos_arc = std::cos(arc);
    const double sin_arc = std::sin(arc);

    Vec3 p = sample_point_on_sphere(rng);

    S2WalkerOut out;
    bool inside = p[2] >= z_cap;
    double cap_flight = 0.0;        // arc since the last entry
    bool flight_from_entry = false;  // false while the first partial flight runs

    for (std::int64_t step = 0; step < cfg.steps; ++step) {
        const Vec3 h = sample_tangent_heading(p, rng);
        const double z0 = p[2];
        const double hz = h[2];

        // |dz/ds| <= 1, so a step that starts at least `arc` away from the
        // threshold cannot cross it.
        if (z0 - z_cap >= arc) {
            out.in_cap_arc += arc;
            cap_flight += arc;
        } else if (z_cap - z0 >= arc) {
            // whole step outside
        } else {
            const double amp = std::hypot(z0, hz);
            const double delta = std::atan2(hz, z0);

            double breaks[4];
            int nb = 0;
            breaks[nb++] = 0.0;
            if (amp > std::abs(z_cap)) {
                const double half_width = std::acos(std::clamp(z_cap / amp, -1.0, 1.0));
                for (const double s :
                     {delta - half_width, delta + half_width, delta - half_width + 2.0 * kPi,
                      delta + half_width - 2.0 * kPi}) {
                    if (s > 0.0 && s < arc && nb < 4) breaks[nb++] = s;
                }
                std::sort(breaks + 1, breaks + nb);
            }
            double prev = 0.0;
            for (int j = 1; j <= nb; ++j) {
                const double next = (j < nb) ? breaks[j] : arc;
                const double mid = 0.5 * (prev + next);
                const bool seg_inside = amp * std::cos(mid - delta) >= z_cap;
                if (seg_inside != inside) {
                    if (seg_inside) {  // entry
                        ++out.entries;
                        cap_flight = 0.0;
                        flight_from_entry = true;
                    } else {  // exit
                        if (flight_from_entry) samples.push_back(cap_flight * r);
                        flight_from_entry = false;
                    }
                    inside = seg_inside;
                }
                if (seg_inside) {
                    const double len = next - prev;
                    out.in_cap_arc += len;
                    cap_flight += len;
                }
                prev = next;
            }
        }

        Vec3 q;
        for (int i = 0; i < 3; ++i) q[i] = p[i] * cos_arc + h[i] * sin_arc;
        normalize3(q);
        p = q;
    }
    return out;
}

}  // namespace

WalkStats s2_walk_trial(const S2WalkConfig& cfg) {
    cfg.validate();
    const double r = cfg.cap.sphere_radius;
    const double sphere_area = 4.0 * kPi * r * r;
    const double boundary = cap_boundary_length(cfg.cap);
    const double volume = cap_volume(cfg.cap);

    WalkStats stats;
    stats.total_time = static_cast<double>(cfg.steps) * cfg.dt;
    if (cfg.walkers == 0 || cfg.steps == 0) return stats;

    const std::int64_t w_count = cfg.walkers;
    std::vector<std::uint64_t> entries(static_cast<std::size_t>(w_count), 0);
    std::vector<double> in_cap(static_cast<std::size_t>(w_count), 0.0);
    const int p = static_cast<int>(std::clamp<std::int64_t>(cfg.workers, 1, w_count));
    std::vector<std::vector<double>> chunk_samples(static_cast<std::size_t>(p));

    detail::parallel_chunks(w_count, p, [&](int chunk, std::int64_t lo, std::int64_t hi) {
        auto& samples = chunk_samples[static_cast<std::size_t>(chunk)];
        for (std::int64_t w = lo; w < hi; ++w) {
            const S2WalkerOut res = simulate_surface_walker(cfg, w, samples);
            entries[static_cast<std::size_t>(w)] = res.entries;
            in_cap[static_cast<std::size_t>(w)] = res.in_cap_arc * r;
        }
    });

    std::uint64_t total_entries = 0;
    for (const auto e : entries) total_entries += e;
    double total_path = 0.0;
    for (const double a : in_cap) total_path += a;  // walker order
    stats.boundary_hits = total_entries;
    stats.total_in_region_path = total_path;
    for (const auto& s : chunk_samples)
        stats.in_region_path_samples.insert(stats.in_region_path_samples.end(), s.begin(),
                                            s.end());

    if (total_entries > 0) {
        // Flux estimator with density walkers / (4 pi r^2) and unit speed.
        const double per_walker_scale = sphere_area / (boundary * stats.total_time);
        stats.k_hat = static_cast<double>(total_entries) / static_cast<double>(w_count) *
                      per_walker_scale;
        if (w_count > 1) {
            const double mean_e =
                static_cast<double>(total_entries) / static_cast<double>(w_count);
            double ss = 0.0;
            for (const auto e : entries) {
                const double dev = static_cast<double>(e) - mean_e;
                ss += dev * dev;
            }
            const double sd = std::sqrt(ss / static_cast<double>(w_count - 1));
            stats.k_stderr = per_walker_scale * sd / std::sqrt(static_cast<double>(w_count));
        }
        stats.mean_path_hat = volume / (stats.k_hat * boundary);
        stats.mean_path_empirical = total_path / static_cast<double>(total_entries);
    }
    if (!stats.in_region_path_samples.empty()) {
        double sum = 0.0;
        for (const double v : stats.in_region_path_samples) sum += v;
        stats.path_sample_mean = sum / static_cast<double>(stats.in_region_path_samples.size());
    }
    return stats;
}

}  // namespace fluxwalk
