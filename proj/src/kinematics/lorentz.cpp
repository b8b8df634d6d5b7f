#include "axrel/kinematics/lorentz.hpp"

#include "axrel/errors.hpp"

namespace axrel {

AffineMap AffineMap::compose(const AffineMap& other) const {
    return AffineMap(linear_ * other.linear_, linear_ * other.translation_ + translation_);
}

AffineMap AffineMap::inverse() const {
    Matrix4 inv = linear_.inverse();
    Coord4 t = inv * translation_;
    return AffineMap(inv, ExactReal(-1) * t);
}

bool AffineMap::is_identity() const {
    return linear_ == Matrix4::identity() && translation_ == Coord4();
}

bool is_lorentz(const Matrix4& l) { return l.transpose() * Matrix4::eta() * l == Matrix4::eta(); }

PoincareMap::PoincareMap(Matrix4 lorentz, Coord4 translation) : map_(std::move(lorentz), std::move(translation)) {
    if (!is_lorentz(map_.linear())) throw Error("matrix is not a Lorentz transformation: " + map_.linear().to_string());
}

PoincareMap PoincareMap::compose(const PoincareMap& other) const {
    return PoincareMap(map_.compose(other.map_), Trusted{});
}

PoincareMap PoincareMap::inverse() const {
    Matrix4 eta = Matrix4::eta();
    Matrix4 inv = eta * map_.linear().transpose() * eta;
    Coord4 t = inv * map_.translation();
    return PoincareMap(AffineMap(inv, ExactReal(-1) * t), Trusted{});
}

ExactReal lorentz_gamma(const Vec3& v) {
    ExactReal v2 = v.norm2();
    if (v2 >= 1) throw SuperluminalVelocity("speed " + sqrt(v2).to_string() + " is not below 1");
    return ExactReal(1) / sqrt(ExactReal(1) - v2);
}

PoincareMap boost(const Vec3& v) {
    ExactReal g = lorentz_gamma(v);
    ExactReal k = g * g / (ExactReal(1) + g);
    Matrix4 b;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) b(i, j) = ExactReal(i == j ? 1 : 0) + k * v[i] * v[j];
        b(i, 3) = -(g * v[i]);
        b(3, i) = -(g * v[i]);
    }
    b(3, 3) = g;
    return PoincareMap(b, Coord4());
}

Matrix4 rotation(const std::array<long, 4>& q) {
    ExactReal w(q[0]), x(q[1]), y(q[2]), z(q[3]);
    ExactReal n = w * w + x * x + y * y + z * z;
    if (n.is_zero()) throw Error("rotation quaternion must be nonzero");
    Matrix4 r;
    r(0, 0) = (w * w + x * x - y * y - z * z) / n;
    r(0, 1) = ExactReal(2) * (x * y - w * z) / n;
    r(0, 2) = ExactReal(2) * (x * z + w * y) / n;
    r(1, 0) = ExactReal(2) * (x * y + w * z) / n;
    r(1, 1) = (w * w - x * x + y * y - z * z) / n;
    r(1, 2) = ExactReal(2) * (y * z - w * x) / n;
    r(2, 0) = ExactReal(2) * (x * z - w * y) / n;
    r(2, 1) = ExactReal(2) * (y * z + w * x) / n;
    r(2, 2) = (w * w - x * x - y * y + z * z) / n;
    r(3, 3) = 1;
    return r;
}

PoincareMap observer_chart(const Vec3& velocity, const std::array<long, 4>& quaternion, const Coord4& origin) {
    PoincareMap rot(rotation(quaternion), Coord4());
    PoincareMap shift(Matrix4::identity(), ExactReal(-1) * origin);
    return rot.compose(boost(velocity)).compose(shift);
}

}  // namespace axrel
