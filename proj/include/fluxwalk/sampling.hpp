#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "fluxwalk/geometry.hpp"
#include "fluxwalk/rng.hpp"
#include "fluxwalk/vec.hpp"

namespace fluxwalk {

enum class SampleMode { rejection, direct };

// Rejection sampling draws coordinates uniformly in [-1,1]^n; the acceptance
// ratio V_n / 2^n is below 0.1% past n = 12, so higher dimensions refuse it.
inline constexpr int kMaxRejectionDim = 12;

inline void check_sample_mode(SampleMode mode, int n) {
    if (mode == SampleMode::rejection && n > kMaxRejectionDim)
        throw std::invalid_argument(
            "rejection sampling is limited to dimensions <= 12");
}

namespace detail {

// Fills out with independent standard normals. Pairs come from the polar
// method; an odd trailing slot discards the spare half of its pair so the
// stream consumption stays a pure function of the call sequence.
inline void fill_standard_normals(std::span<double> out, RngStream& rng) {
    const int n = static_cast<int>(out.size());
    int i = 0;
    for (; i + 1 < n; i += 2) rng.next_normal_pair(out[i], out[i + 1]);
    if (i < n) {
        double spare;
        rng.next_normal_pair(out[i], spare);
    }
}

inline void sample_unit_direction_into(std::span<double> out, RngStream& rng,
                                       SampleMode mode) {
    const int n = static_cast<int>(out.size());
    double norm_sq = 0.0;
    if (mode == SampleMode::rejection) {
        // Uniform in [-1,1]^n, redrawn on norm > 1 or norm == 0.
        for (;;) {
            norm_sq = 0.0;
            for (int i = 0; i < n; ++i) {
                out[i] = rng.next_symmetric();
                norm_sq += out[i] * out[i];
            }
            if (norm_sq != 0.0 && norm_sq <= 1.0) break;
        }
    } else {
        do {
            fill_standard_normals(out, rng);
            norm_sq = 0.0;
            for (int i = 0; i < n; ++i) norm_sq += out[i] * out[i];
        } while (norm_sq == 0.0);
    }
    if (n == 1) {
        // Normalizing a scalar is its sign; keep it exact.
        out[0] = out[0] > 0.0 ? 1.0 : -1.0;
        return;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int i = 0; i < n; ++i) out[i] *= inv;
}

inline void sample_point_in_ball_into(std::span<double> out, double radius,
                                      RngStream& rng, SampleMode mode) {
    const int n = static_cast<int>(out.size());
    if (mode == SampleMode::rejection) {
        // Uniform in the cube [-r, r]^n, accepted only strictly inside.
        for (;;) {
            double norm_sq = 0.0;
            for (int i = 0; i < n; ++i) {
                out[i] = radius * rng.next_symmetric();
                norm_sq += out[i] * out[i];
            }
            if (std::sqrt(norm_sq) < radius) return;
        }
    }
    // Unit direction scaled by r * U^(1/n) with U uniform on (0, 1].
    sample_unit_direction_into(out, rng, SampleMode::direct);
    const double u = 1.0 - rng.next_unit();
    const double scale = radius * std::pow(u, 1.0 / n);
    for (int i = 0; i < n; ++i) out[i] *= scale;
}

}  // namespace detail

// Uniform unit vector on S^{n-1}. Rejection mode redraws cube points with
// norm > 1 or norm == 0 and normalizes the survivor; direct mode normalizes
// n independent standard normals.
inline VecN sample_unit_direction(Dimension n, RngStream& rng,
                                  SampleMode mode = SampleMode::direct) {
    check_sample_mode(mode, n.value());
    VecN d(n.value());
    detail::sample_unit_direction_into({d.data(), static_cast<size_t>(n.value())}, rng, mode);
    return d;
}

// Uniform point in the closed n-ball of radius r.
inline VecN sample_point_in_ball(Dimension n, double radius, RngStream& rng,
                                 SampleMode mode = SampleMode::direct) {
    check_sample_mode(mode, n.value());
    if (radius <= 0.0)
        throw std::domain_error("sample_point_in_ball: radius must be positive");
    VecN p(n.value());
    detail::sample_point_in_ball_into({p.data(), static_cast<size_t>(n.value())}, radius, rng,
                                      mode);
    return p;
}

}  // namespace fluxwalk
