#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace fluxwalk {

namespace detail {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer (Stafford mix13).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Seeded random stream addressed by (seed, stream_id).
//
// Generator: xoshiro256++ with its four state words drawn from SplitMix64
// iterates of a joint hash of seed and stream_id. Only 64-bit integer
// arithmetic is involved, so a given (seed, stream_id) produces the same
// sequence on every platform. Distinct stream_ids land in unrelated regions
// of the state space and behave as independent streams; parallel workers
// must each own their own stream_id rather than share one stream.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t x =
            detail::mix64(seed + detail::kGoldenGamma) ^
            detail::mix64(stream_id * detail::kGoldenGamma + 0x2545f4914f6cdd1dULL);
        for (auto& word : state_) {
            x += detail::kGoldenGamma;
            word = detail::mix64(x);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = detail::kGoldenGamma;  // all-zero state is invalid
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    // A pair of independent standard normals (Marsaglia polar method).
    void next_normal_pair(double& g0, double& g1) {
        double u, v, s;
        do {
            u = next_symmetric();
            v = next_symmetric();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        g0 = u * f;
        g1 = v * f;
    }

  private:
    std::array<std::uint64_t, 4> state_;
};

}  // namespace fluxwalk
