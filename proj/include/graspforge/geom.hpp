// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace graspforge {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? *this / n : Vec3{};
    }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Numerically robust angle in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }
    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.m = {c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z};
        return r;
    }
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        Mat3 r;
        r.m = {r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z};
        return r;
    }
    // Rodrigues rotation about a unit axis.
    static Mat3 axis_angle(const Vec3& axis, double angle) {
        double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        double x = axis.x, y = axis.y, z = axis.z;
        Mat3 r;
        r.m = {t * x * x + c,     t * x * y - s * z, t * x * z + s * y,
               t * x * y + s * z, t * y * y + c,     t * y * z - s * x,
               t * x * z - s * y, t * y * z + s * x, t * z * z + c};
        return r;
    }

    double operator()(int r, int c) const { return m[r * 3 + c]; }
    double& operator()(int r, int c) { return m[r * 3 + c]; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
        return r;
    }
    bool operator==(const Mat3& o) const { return m == o.m; }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    Vec3 column(int c) const { return {m[c], m[3 + c], m[6 + c]}; }
    Vec3 row(int r) const { return {m[r * 3], m[r * 3 + 1], m[r * 3 + 2]}; }
    double determinant() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
    // Max deviation of R^T R from identity.
    double orthonormality_error() const {
        Mat3 g = transposed() * (*this);
        double e = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) e = std::max(e, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
        return e;
    }
};

// Rigid transform, p -> rot * p + trans.
struct Transform {
    Mat3 rot;
    Vec3 trans;

    static Transform identity() { return {}; }

    Vec3 apply(const Vec3& p) const { return rot * p + trans; }
    Vec3 apply_dir(const Vec3& d) const { return rot * d; }
    Transform inverse() const {
        Mat3 rt = rot.transposed();
        return {rt, -(rt * trans)};
    }
    // (a * b).apply(p) == a.apply(b.apply(p))
    Transform operator*(const Transform& b) const { return {rot * b.rot, rot * b.trans + trans}; }
};

struct Aabb {
    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};

    void expand(const Vec3& p) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    void merge(const Aabb& o) { expand(o.lo); expand(o.hi); }
    bool valid() const { return lo.x <= hi.x; }
    bool overlaps(const Aabb& o) const {
        return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y &&
               lo.z <= o.hi.z && o.lo.z <= hi.z;
    }
    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
    }
    Aabb inflated(double r) const {
        Aabb b = *this;
        b.lo -= Vec3{r, r, r};
        b.hi += Vec3{r, r, r};
        return b;
    }
    Vec3 center() const { return (lo + hi) * 0.5; }
    Vec3 extent() const { return hi - lo; }
    double diagonal() const { return valid() ? (hi - lo).norm() : 0.0; }
};

// Enclosing box of a transformed box (8 corners).
inline Aabb transformed_aabb(const Aabb& b, const Transform& t) {
    Aabb r;
    for (int i = 0; i < 8; ++i) {
        Vec3 c{i & 1 ? b.hi.x : b.lo.x, i & 2 ? b.hi.y : b.lo.y, i & 4 ? b.hi.z : b.lo.z};
        r.expand(t.apply(c));
    }
    return r;
}

inline Vec3 tri_centroid(const Vec3& a, const Vec3& b, const Vec3& c) { return (a + b + c) / 3.0; }
inline Vec3 tri_raw_normal(const Vec3& a, const Vec3& b, const Vec3& c) { return (b - a).cross(c - a); }
inline double tri_area(const Vec3& a, const Vec3& b, const Vec3& c) { return 0.5 * tri_raw_normal(a, b, c).norm(); }

inline double distance_point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 ab = b - a;
    double len2 = ab.norm2();
    if (len2 <= 0.0) return (p - a).norm();
    double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + ab * t)).norm();
}

constexpr double kPi = 3.14159265358979323846;
inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

}  // namespace graspforge
