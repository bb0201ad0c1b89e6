#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>

namespace fluxwalk {

inline constexpr int kMaxDimension = 16;

// Fixed-capacity Euclidean vector with runtime dimension 0..16.
class VecN {
  public:
    VecN() { coords_.fill(0.0); }
    explicit VecN(int n) : n_(n) { coords_.fill(0.0); }
    VecN(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
        coords_.fill(0.0);
        std::copy(xs.begin(), xs.end(), coords_.begin());
    }

    int dim() const { return n_; }
    double operator[](int i) const { return coords_[i]; }
    double& operator[](int i) { return coords_[i]; }
    const double* data() const { return coords_.data(); }
    double* data() { return coords_.data(); }

    double dot(const VecN& o) const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += coords_[i] * o.coords_[i];
        return s;
    }
    double norm_sq() const { return dot(*this); }
    double norm() const { return std::sqrt(norm_sq()); }

    VecN& operator+=(const VecN& o) {
        for (int i = 0; i < n_; ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    VecN& operator-=(const VecN& o) {
        for (int i = 0; i < n_; ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    VecN& operator*=(double c) {
        for (int i = 0; i < n_; ++i) coords_[i] *= c;
        return *this;
    }
    // *this += c * o
    VecN& add_scaled(const VecN& o, double c) {
        for (int i = 0; i < n_; ++i) coords_[i] += c * o.coords_[i];
        return *this;
    }

    friend VecN operator+(VecN a, const VecN& b) { return a += b; }
    friend VecN operator-(VecN a, const VecN& b) { return a -= b; }
    friend VecN operator*(VecN a, double c) { return a *= c; }
    friend VecN operator*(double c, VecN a) { return a *= c; }

    // Unused slots stay zero, so whole-array comparison is sound.
    friend bool operator==(const VecN& a, const VecN& b) {
        return a.n_ == b.n_ && a.coords_ == b.coords_;
    }

  private:
    std::array<double, kMaxDimension> coords_{};
    int n_ = 0;
};

}  // namespace fluxwalk
