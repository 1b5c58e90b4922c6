#pragma once

// Fixed-size 2- and 3-dimensional vectors and matrices. The cumulant
// dynamics never needs anything larger, so a full linear-algebra
// dependency would be overkill.

#include <array>
#include <cmath>
#include <cstddef>

namespace gsp {

struct Vec2 {
    double x[2]{};
    double& operator[](std::size_t i) { return x[i]; }
    double operator[](std::size_t i) const { return x[i]; }
};

struct Vec3 {
    double x[3]{};
    double& operator[](std::size_t i) { return x[i]; }
    double operator[](std::size_t i) const { return x[i]; }
};

struct Mat2 {
    // row-major
    double a[2][2]{};
    double& operator()(std::size_t r, std::size_t c) { return a[r][c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r][c]; }

    static Mat2 identity() {
        Mat2 m;
        m(0, 0) = m(1, 1) = 1.0;
        return m;
    }
    double trace() const { return a[0][0] + a[1][1]; }
};

struct Mat3 {
    double a[3][3]{};
    double& operator()(std::size_t r, std::size_t c) { return a[r][c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r][c]; }

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }
    double trace() const { return a[0][0] + a[1][1] + a[2][2]; }
};

inline Vec2 operator+(Vec2 u, Vec2 v) { return {u[0] + v[0], u[1] + v[1]}; }
inline Vec2 operator-(Vec2 u, Vec2 v) { return {u[0] - v[0], u[1] - v[1]}; }
inline Vec2 operator*(double c, Vec2 v) { return {c * v[0], c * v[1]}; }

inline Vec3 operator+(Vec3 u, Vec3 v) { return {u[0] + v[0], u[1] + v[1], u[2] + v[2]}; }
inline Vec3 operator-(Vec3 u, Vec3 v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
inline Vec3 operator*(double c, Vec3 v) { return {c * v[0], c * v[1], c * v[2]}; }

inline Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}

inline Vec3 operator*(const Mat3& m, Vec3 v) {
    Vec3 r;
    for (std::size_t i = 0; i < 3; ++i)
        r[i] = m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
    return r;
}

inline Mat2 operator*(const Mat2& p, const Mat2& q) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            r(i, j) = p(i, 0) * q(0, j) + p(i, 1) * q(1, j);
    return r;
}

inline Mat3 operator*(const Mat3& p, const Mat3& q) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = p(i, 0) * q(0, j) + p(i, 1) * q(1, j) + p(i, 2) * q(2, j);
    return r;
}

inline Mat2 operator+(const Mat2& p, const Mat2& q) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = p(i, j) + q(i, j);
    return r;
}

inline Mat3 operator+(const Mat3& p, const Mat3& q) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = p(i, j) + q(i, j);
    return r;
}

inline Mat2 operator*(double c, const Mat2& p) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = c * p(i, j);
    return r;
}

inline Mat3 operator*(double c, const Mat3& p) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = c * p(i, j);
    return r;
}

inline double max_abs_diff(const Mat2& p, const Mat2& q) {
    double m = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) m = std::max(m, std::abs(p(i, j) - q(i, j)));
    return m;
}

inline double max_abs_diff(const Mat3& p, const Mat3& q) {
    double m = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m = std::max(m, std::abs(p(i, j) - q(i, j)));
    return m;
}

} // namespace gsp
