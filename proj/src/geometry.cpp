#include "fluxwalk/geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fluxwalk {

namespace {

constexpr double kPi = std::numbers::pi;

void check_range(int n, int lo, const char* what) {
    if (n < lo || n > Dimension::kMax)
        throw std::domain_error(std::string(what) + ": dimension " + std::to_string(n) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(Dimension::kMax) + "]");
}

}  // namespace

Dimension::Dimension(int n) : n_(n) {
    check_range(n, kMin, "Dimension");
}

double unit_ball_volume(int n) {
    check_range(n, 0, "unit_ball_volume");
    // V_0 = 1, V_1 = 2, V_n = (2*pi/n) * V_{n-2}
    double even = 1.0;  // V_0
    double odd = 2.0;   // V_1
    if (n == 0) return even;
    if (n == 1) return odd;
    for (int k = 2; k <= n; ++k) {
        if (k % 2 == 0)
            even *= 2.0 * kPi / k;
        else
            odd *= 2.0 * kPi / k;
    }
    return (n % 2 == 0) ? even : odd;
}

double unit_sphere_area(Dimension n) {
    return n.value() * unit_ball_volume(n.value());
}

double theoretical_k(Dimension n) {
    return unit_ball_volume(n.value() - 1) / unit_sphere_area(n);
}

double mean_chord(Dimension n, double radius) {
    if (radius <= 0.0)
        throw std::domain_error("mean_chord: radius must be positive");
    return unit_ball_volume(n.value()) / unit_ball_volume(n.value() - 1) * radius;
}

double ExactK::value() const {
    const double q = static_cast<double>(numerator) / static_cast<double>(denominator);
    return pi_power == 0 ? q : q / kPi;
}

ExactK exact_k(Dimension n) {
    // V_m = (num/den) * pi^floor(m/2), carried exactly in 64-bit integers.
    // m <= 16 keeps every numerator and denominator far below overflow.
    struct Rational {
        std::int64_t num, den;
    };
    std::array<Rational, Dimension::kMax + 1> v;
    v[0] = {1, 1};
    v[1] = {2, 1};
    for (int m = 2; m <= n.value(); ++m) {
        // V_m = (2/m) * pi * V_{m-2}; the pi factor is tracked by floor(m/2).
        std::int64_t num = 2 * v[m - 2].num;
        std::int64_t den = m * v[m - 2].den;
        const std::int64_t g = std::gcd(num, den);
        v[m] = {num / g, den / g};
    }
    // K_n = V_{n-1} / (n * V_n); the pi powers cancel for odd n and leave
    // pi^-1 for even n.
    const int nn = n.value();
    std::int64_t num = v[nn - 1].num * v[nn].den;
    std::int64_t den = v[nn - 1].den * v[nn].num * nn;
    const std::int64_t g = std::gcd(num, den);
    return ExactK{num / g, den / g, nn % 2 == 0 ? -1 : 0};
}

BallGeometry::BallGeometry(Dimension d, double r) : dim(d.value()), radius(r) {
    if (r <= 0.0)
        throw std::domain_error("BallGeometry: radius must be positive");
    const double vn = unit_ball_volume(dim);
    const double vn1 = unit_ball_volume(dim - 1);
    volume = vn * std::pow(r, dim);
    surface_area = dim * volume / r;
    normal_section_volume = vn1 * std::pow(r, dim - 1);
    k_constant = normal_section_volume / surface_area;
    alpha = 1.0 / k_constant;
    mean_chord = volume / (k_constant * surface_area);
}

}  // namespace fluxwalk
