#pragma once

// Exact 3-vectors, space-time locations and 4x4 matrices. Coordinates are
// ordered (x1, x2, x3, x4) with x4 the time coordinate; c = 1.

#include "axrel/field/exact_real.hpp"

#include <array>
#include <ostream>
#include <string>

namespace axrel {

struct Vec3 {
    std::array<ExactReal, 3> v;

    Vec3() = default;
    Vec3(ExactReal a, ExactReal b, ExactReal c) : v{std::move(a), std::move(b), std::move(c)} {}

    ExactReal& operator[](std::size_t i) { return v[i]; }
    const ExactReal& operator[](std::size_t i) const { return v[i]; }

    ExactReal dot(const Vec3& o) const { return v[0] * o.v[0] + v[1] * o.v[1] + v[2] * o.v[2]; }
    ExactReal norm2() const { return dot(*this); }
    bool is_zero() const { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
    friend Vec3 operator*(const ExactReal& s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
    Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.v == b.v; }

    std::string to_string() const;
};

struct Coord4 {
    std::array<ExactReal, 4> x;

    Coord4() = default;
    Coord4(ExactReal a, ExactReal b, ExactReal c, ExactReal t)
        : x{std::move(a), std::move(b), std::move(c), std::move(t)} {}
    Coord4(const Vec3& space, ExactReal t) : x{space[0], space[1], space[2], std::move(t)} {}

    ExactReal& operator[](std::size_t i) { return x[i]; }
    const ExactReal& operator[](std::size_t i) const { return x[i]; }

    Vec3 space() const { return {x[0], x[1], x[2]}; }
    const ExactReal& time() const { return x[3]; }

    friend Coord4 operator+(const Coord4& a, const Coord4& b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
    }
    friend Coord4 operator-(const Coord4& a, const Coord4& b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    }
    friend Coord4 operator*(const ExactReal& s, const Coord4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }
    friend bool operator==(const Coord4& a, const Coord4& b) { return a.x == b.x; }

    std::array<double, 4> to_double() const;
    std::string to_string() const;
};

/// (x1-y1)^2 + (x2-y2)^2 + (x3-y3)^2 - (x4-y4)^2
ExactReal mu(const Coord4& x, const Coord4& y);

class Matrix4 {
public:
    Matrix4();  // zero
    static Matrix4 identity();
    /// diag(1, 1, 1, -1)
    static Matrix4 eta();

    ExactReal& operator()(std::size_t i, std::size_t j) { return m_[i][j]; }
    const ExactReal& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }

    Matrix4 transpose() const;
    /// Exact Gauss-Jordan inverse; throws DivisionByZero when singular.
    Matrix4 inverse() const;
    ExactReal determinant() const;

    friend Matrix4 operator*(const Matrix4& a, const Matrix4& b);
    friend Coord4 operator*(const Matrix4& a, const Coord4& x);
    friend bool operator==(const Matrix4& a, const Matrix4& b) { return a.m_ == b.m_; }

    std::string to_string() const;

private:
    std::array<std::array<ExactReal, 4>, 4> m_;
};

std::ostream& operator<<(std::ostream& os, const Coord4& c);

}  // namespace axrel
