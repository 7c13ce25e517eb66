#pragma once

/// Small fixed-size vectors and matrices (3- and 4-dimensional, real).
/// Everything is a plain value type; no dynamic allocation anywhere.

#include <array>
#include <cmath>
#include <stdexcept>

namespace dichro {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double k) const { return {k * x, k * y, k * z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double k, const Vec3& v) { return v * k; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n == 0.0) throw std::domain_error("cannot normalize a zero 3-vector");
    return v * (1.0 / n);
}

/// Angle between two unit vectors, in [0, pi].  Stable for nearly
/// parallel and nearly antiparallel arguments (unlike acos of the dot).
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

struct Mat3 {
    // m[row][col]
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity() {
        Mat3 r;
        r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
        return r;
    }

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }

    Mat3 operator*(double k) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = k * m[i][j];
        return r;
    }

    Vec3 apply(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    double trace() const { return m[0][0] + m[1][1] + m[2][2]; }
};

inline double frobenius(const Mat3& a) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a.m[i][j] * a.m[i][j];
    return std::sqrt(s);
}

struct Vec4 {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

    Vec4 operator+(const Vec4& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    Vec4 operator-(const Vec4& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    Vec4 operator*(double k) const { return {k * t, k * x, k * y, k * z}; }

    Vec3 spatial() const { return {x, y, z}; }

    double operator[](int i) const { return i == 0 ? t : (i == 1 ? x : (i == 2 ? y : z)); }
};

inline Vec4 operator*(double k, const Vec4& v) { return v * k; }

/// Minkowski inner product with signature (+,-,-,-).
inline double minkowski(const Vec4& a, const Vec4& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

/// Index lowering: v -> eta v (flips the spatial components).
inline Vec4 lower(const Vec4& v) { return {v.t, -v.x, -v.y, -v.z}; }

inline double euclid_norm(const Vec4& v) {
    return std::sqrt(v.t * v.t + v.x * v.x + v.y * v.y + v.z * v.z);
}

struct Mat4 {
    std::array<std::array<double, 4>, 4> m{};

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
        return r;
    }

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    Mat4 operator*(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    Mat4 operator+(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }

    Mat4 operator-(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }

    Mat4 operator*(double k) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = k * m[i][j];
        return r;
    }

    Vec4 apply(const Vec4& v) const {
        Vec4 r;
        r.t = m[0][0] * v.t + m[0][1] * v.x + m[0][2] * v.y + m[0][3] * v.z;
        r.x = m[1][0] * v.t + m[1][1] * v.x + m[1][2] * v.y + m[1][3] * v.z;
        r.y = m[2][0] * v.t + m[2][1] * v.x + m[2][2] * v.y + m[2][3] * v.z;
        r.z = m[3][0] * v.t + m[3][1] * v.x + m[3][2] * v.y + m[3][3] * v.z;
        return r;
    }

    Mat4 transpose() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
        return r;
    }
};

/// Outer product a b^T.
inline Mat4 outer(const Vec4& a, const Vec4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = a[i] * b[j];
    return r;
}

inline double frobenius(const Mat4& a) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += a.m[i][j] * a.m[i][j];
    return std::sqrt(s);
}

inline double det3(double a, double b, double c, double d, double e, double f, double g,
                   double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

inline double determinant(const Mat4& a) {
    const auto& m = a.m;
    double d = 0.0;
    d += m[0][0] * det3(m[1][1], m[1][2], m[1][3], m[2][1], m[2][2], m[2][3], m[3][1], m[3][2], m[3][3]);
    d -= m[0][1] * det3(m[1][0], m[1][2], m[1][3], m[2][0], m[2][2], m[2][3], m[3][0], m[3][2], m[3][3]);
    d += m[0][2] * det3(m[1][0], m[1][1], m[1][3], m[2][0], m[2][1], m[2][3], m[3][0], m[3][1], m[3][3]);
    d -= m[0][3] * det3(m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2], m[3][0], m[3][1], m[3][2]);
    return d;
}

/// The Minkowski metric as a matrix, diag(1,-1,-1,-1).
inline Mat4 eta() {
    Mat4 r = Mat4::identity();
    r.m[1][1] = r.m[2][2] = r.m[3][3] = -1.0;
    return r;
}

inline double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace dichro
