#pragma once

#include <cstdint>

namespace fluxwalk {

// Spatial dimension of a ball. Supported range is 1..16: wide enough to
// exercise both parities well past the tabulated constants, small enough
// that the volume recursion stays exact in double precision.
class Dimension {
  public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 16;

    explicit Dimension(int n);  // throws std::domain_error outside [1, 16]
    int value() const { return n_; }

    friend bool operator==(Dimension a, Dimension b) { return a.n_ == b.n_; }

  private:
    int n_;
};

// V_n, volume of the unit n-ball, for n in 0..16. Evaluated by the recursion
// V_n = (2*pi/n) * V_{n-2} with V_0 = 1 (a point has unit measure) and
// V_1 = 2.
double unit_ball_volume(int n);

// A_n = n * V_n, surface area of the unit n-ball's boundary.
double unit_sphere_area(Dimension n);

// K_n = V_{n-1} / A_n, the boundary-flux constant. Radius independence is a
// consequence of the closed forms, not an input.
double theoretical_k(Dimension n);

// E(C) = V_n(r) / V_{n-1}(r) = (V_n / V_{n-1}) * r: mean chord length of the
// n-ball of radius r under the parallel-class measure. Equals V / (K * A).
double mean_chord(Dimension n, double radius);

// K_n in closed form: (numerator/denominator) * pi^pi_power. K_n is rational
// for odd n (pi_power 0) and rational over pi for even n (pi_power -1).
struct ExactK {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;
    int pi_power = 0;

    double value() const;

    friend bool operator==(const ExactK& a, const ExactK& b) {
        return a.numerator == b.numerator && a.denominator == b.denominator &&
               a.pi_power == b.pi_power;
    }
};

// Exact form of K_n from integer recursion on the ball-volume numerators and
// denominators (no float rounding involved).
ExactK exact_k(Dimension n);

// Closed-form constants of an n-ball of given radius, bundled.
struct BallGeometry {
    BallGeometry(Dimension dim, double radius);  // radius <= 0 -> domain error

    int dim;
    double radius;
    double volume;                 // V_n * r^n
    double surface_area;           // A_n * r^(n-1)
    double normal_section_volume;  // V_{n-1} * r^(n-1)
    double k_constant;             // V_{n-1} / A_n (radius independent)
    double alpha;                  // 1 / K
    double mean_chord;             // V / (K * A) = volume / normal_section_volume
};

}  // namespace fluxwalk
