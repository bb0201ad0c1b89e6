#pragma once

#include <array>
#include <cstdint>

#include "fluxwalk/rng.hpp"
#include "fluxwalk/walker.hpp"

namespace fluxwalk {

// Spherical cap about the north pole of S^2: colatitude theta in (0, pi/2].
// Past pi/2 the "cap" is better described as a cap about the south pole, so
// construction refuses it.
struct CapSpec {
    CapSpec(double sphere_radius, double theta);  // throws std::domain_error

    double sphere_radius;
    double theta;
};

// 2 pi r^2 (1 - cos theta): surface area enclosed by the cap.
double cap_volume(const CapSpec& cap);

// 2 pi r sin theta: length of the cap's boundary circle.
double cap_boundary_length(const CapSpec& cap);

// pi r (1 - cos theta) / sin theta: the mean geodesic chord, equal to
// cap_volume / (K * cap_boundary_length) with K = 1/pi.
double cap_mean_chord(const CapSpec& cap);

// The flux constant of S^2 regions.
double surface_flux_k();  // 1 / pi

// Arc length inside the cap of the great circle whose pole makes angle psi
// with the cap axis: 2 r acos(cos theta / sin psi) when the circle reaches
// the cap (sin psi >= cos theta), else 0.
double geodesic_chord_length(double psi, const CapSpec& cap);

using Vec3 = std::array<double, 3>;

struct S2WalkerState {
    Vec3 position;  // unit
    Vec3 heading;   // unit, tangent: position . heading = 0
};

// Rotate (position, heading) along the great circle through position in
// direction heading by arc_angle radians, re-orthonormalizing against
// floating-point drift.
S2WalkerState advance_on_great_circle(const S2WalkerState& state, double arc_angle);

Vec3 sample_point_on_sphere(RngStream& rng);
Vec3 sample_tangent_heading(const Vec3& position, RngStream& rng);

// Geodesic walk on the whole sphere with the cap as a counting region. The
// sphere is compact and the uniform density is stationary, so no reflecting
// wall is needed; the walk tests the same flux identity with K = 1/pi.
struct S2WalkConfig {
    CapSpec cap{1.0, 1.5707963267948966};
    double dt = 0.01;  // arc length per step; must be < r * theta / 10
    std::int64_t steps = 2000;
    std::int64_t walkers = 20000;
    std::uint64_t seed = 1;
    int workers = 1;  // same contract as WalkConfig::workers

    void validate() const;
};

// Walkers start uniform on the sphere; every step moves arc length dt along
// a freshly sampled uniform tangent heading. Cap-boundary crossings are
// located in closed form inside each step, entries are counted, and in-cap
// arc accumulates. In the returned stats, boundary_hits holds the entry
// count and k_hat = entries * (4 pi r^2 / walkers) / (boundary * steps * dt).
WalkStats s2_walk_trial(const S2WalkConfig& config);

}  // namespace fluxwalk
