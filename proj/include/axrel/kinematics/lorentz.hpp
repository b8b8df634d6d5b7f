#pragma once

// Affine and Poincare maps over the exact field.
//
// Metric convention: eta = diag(1, 1, 1, -1), so that x^T eta x is the
// squared spatial length minus the squared time, the same sign as mu.

#include "axrel/model/coord.hpp"

#include <array>

namespace axrel {

class AffineMap {
public:
    AffineMap() : linear_(Matrix4::identity()) {}
    AffineMap(Matrix4 linear, Coord4 translation) : linear_(std::move(linear)), translation_(std::move(translation)) {}

    const Matrix4& linear() const { return linear_; }
    const Coord4& translation() const { return translation_; }

    Coord4 operator()(const Coord4& x) const { return linear_ * x + translation_; }
    /// (this o other)(x) = this(other(x))
    AffineMap compose(const AffineMap& other) const;
    AffineMap inverse() const;
    bool is_identity() const;

    friend bool operator==(const AffineMap& a, const AffineMap& b) {
        return a.linear_ == b.linear_ && a.translation_ == b.translation_;
    }

private:
    Matrix4 linear_;
    Coord4 translation_;
};

bool is_lorentz(const Matrix4& l);

/// x -> L x + a with L^T eta L = eta, checked exactly at construction.
class PoincareMap {
public:
    PoincareMap() = default;  // identity
    /// Throws Error when L is not a Lorentz matrix.
    PoincareMap(Matrix4 lorentz, Coord4 translation);

    const Matrix4& lorentz() const { return map_.linear(); }
    const Coord4& translation() const { return map_.translation(); }
    bool orthochronous() const { return map_.linear()(3, 3) > 0; }

    Coord4 operator()(const Coord4& x) const { return map_(x); }
    PoincareMap compose(const PoincareMap& other) const;
    /// Uses L^-1 = eta L^T eta.
    PoincareMap inverse() const;
    const AffineMap& affine() const { return map_; }

    friend bool operator==(const PoincareMap& a, const PoincareMap& b) { return a.map_ == b.map_; }

private:
    struct Trusted {};
    PoincareMap(AffineMap m, Trusted) : map_(std::move(m)) {}
    AffineMap map_;
};

/// Lorentz boost into the frame moving with velocity v (|v| < 1):
/// t' = gamma (t - v.x), x' = x + (gamma^2 / (1 + gamma)) (v.x) v - gamma v t.
/// Throws SuperluminalVelocity for |v| >= 1.
PoincareMap boost(const Vec3& v);
ExactReal lorentz_gamma(const Vec3& v);

/// Spatial rotation of the unit quaternion q / |q| for an integer quaternion
/// q = (w, i, j, k) != 0; the entries are rational.
Matrix4 rotation(const std::array<long, 4>& quaternion);

/// Chart of an observer moving with velocity v through the reference event
/// `origin`, with spatial axes rotated by `quaternion`: x -> R B(v) (x - origin).
PoincareMap observer_chart(const Vec3& velocity, const std::array<long, 4>& quaternion, const Coord4& origin);

}  // namespace axrel
