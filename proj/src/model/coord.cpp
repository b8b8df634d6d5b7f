#include "axrel/model/coord.hpp"

#include "axrel/errors.hpp"

namespace axrel {

std::string Vec3::to_string() const {
    return "(" + v[0].to_string() + ", " + v[1].to_string() + ", " + v[2].to_string() + ")";
}

std::array<double, 4> Coord4::to_double() const {
    return {x[0].to_double(), x[1].to_double(), x[2].to_double(), x[3].to_double()};
}

std::string Coord4::to_string() const {
    return "(" + x[0].to_string() + ", " + x[1].to_string() + ", " + x[2].to_string() + ", " + x[3].to_string() +
           ")";
}

std::ostream& operator<<(std::ostream& os, const Coord4& c) { return os << c.to_string(); }

ExactReal mu(const Coord4& x, const Coord4& y) {
    Coord4 d = x - y;
    return d[0] * d[0] + d[1] * d[1] + d[2] * d[2] - d[3] * d[3];
}

Matrix4::Matrix4() = default;

Matrix4 Matrix4::identity() {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m.m_[i][i] = 1;
    return m;
}

Matrix4 Matrix4::eta() {
    Matrix4 m = identity();
    m.m_[3][3] = -1;
    return m;
}

Matrix4 Matrix4::transpose() const {
    Matrix4 t;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) t.m_[i][j] = m_[j][i];
    return t;
}

Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 c;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            ExactReal s;
            for (std::size_t k = 0; k < 4; ++k)
                if (!a.m_[i][k].is_zero() && !b.m_[k][j].is_zero()) s += a.m_[i][k] * b.m_[k][j];
            c.m_[i][j] = s;
        }
    return c;
}

Coord4 operator*(const Matrix4& a, const Coord4& x) {
    Coord4 y;
    for (std::size_t i = 0; i < 4; ++i) {
        ExactReal s;
        for (std::size_t k = 0; k < 4; ++k)
            if (!a.m_[i][k].is_zero() && !x[k].is_zero()) s += a.m_[i][k] * x[k];
        y[i] = s;
    }
    return y;
}

Matrix4 Matrix4::inverse() const {
    auto a = m_;
    Matrix4 inv = identity();
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        while (pivot < 4 && a[pivot][col].is_zero()) ++pivot;
        if (pivot == 4) throw DivisionByZero("singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv.m_[pivot], inv.m_[col]);
        ExactReal p = a[col][col];
        for (std::size_t j = 0; j < 4; ++j) {
            a[col][j] /= p;
            inv.m_[col][j] /= p;
        }
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            ExactReal f = a[r][col];
            for (std::size_t j = 0; j < 4; ++j) {
                a[r][j] -= f * a[col][j];
                inv.m_[r][j] -= f * inv.m_[col][j];
            }
        }
    }
    return inv;
}

ExactReal Matrix4::determinant() const {
    auto a = m_;
    ExactReal det = 1;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        while (pivot < 4 && a[pivot][col].is_zero()) ++pivot;
        if (pivot == 4) return ExactReal(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < 4; ++r) {
            if (a[r][col].is_zero()) continue;
            ExactReal f = a[r][col] / a[col][col];
            for (std::size_t j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

std::string Matrix4::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < 4; ++i) {
        out += i ? "; " : "";
        for (std::size_t j = 0; j < 4; ++j) out += (j ? ", " : "") + m_[i][j].to_string();
    }
    return out + "]";
}

}  // namespace axrel
