#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "svjmle/errors.hpp"

namespace svjmle {

// Fixed-size 3-vector / 3x3 matrix, enough for the estimator algebra.

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    Vec3 operator+(const Vec3& o) const { return {{v[0] + o[0], v[1] + o[1], v[2] + o[2]}}; }
    Vec3 operator-(const Vec3& o) const { return {{v[0] - o[0], v[1] - o[1], v[2] - o[2]}}; }
    Vec3 operator*(double c) const { return {{c * v[0], c * v[1], c * v[2]}}; }

    double dot(const Vec3& o) const { return v[0] * o[0] + v[1] * o[1] + v[2] * o[2]; }
    double norm() const { return std::sqrt(dot(*this)); }
};

struct Mat3 {
    // Row-major.
    std::array<double, 9> a{};

    double& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }

    Mat3 transpose() const {
        Mat3 t;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vec3 operator*(const Vec3& x) const {
        Vec3 y;
        for (std::size_t i = 0; i < 3; ++i)
            y[i] = (*this)(i, 0) * x[0] + (*this)(i, 1) * x[1] + (*this)(i, 2) * x[2];
        return y;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }

    Mat3 operator*(double c) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.a[i] = c * a[i];
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : a) m = std::max(m, std::abs(x));
        return m;
    }
};

struct Mat2 {
    std::array<double, 4> a{};
    double& operator()(std::size_t i, std::size_t j) { return a[2 * i + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[2 * i + j]; }
};

inline double det3(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// Lower Cholesky factor of a symmetric matrix; returns false if any pivot
// is non-positive (matrix not positive definite).
inline bool cholesky3(const Mat3& m, Mat3& lower) {
    Mat3 l;
    for (std::size_t j = 0; j < 3; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) return false;
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < 3; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    lower = l;
    return true;
}

// Gaussian elimination with partial pivoting. Generic cross-check route for
// the closed-form inverse.
inline Vec3 solve3(Mat3 m, Vec3 b) {
    std::array<std::size_t, 3> p{0, 1, 2};
    for (std::size_t c = 0; c < 3; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < 3; ++r)
            if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
        if (m(piv, c) == 0.0) throw DegenerateStats("solve3: singular matrix");
        if (piv != c) {
            for (std::size_t j = 0; j < 3; ++j) std::swap(m(c, j), m(piv, j));
            std::swap(b[c], b[piv]);
            std::swap(p[c], p[piv]);
        }
        for (std::size_t r = c + 1; r < 3; ++r) {
            const double f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < 3; ++j) m(r, j) -= f * m(c, j);
            b[r] -= f * b[c];
        }
    }
    Vec3 x;
    for (int i = 2; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < 3; ++j)
            s -= m(static_cast<std::size_t>(i), j) * x[j];
        x[static_cast<std::size_t>(i)] = s / m(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
    }
    return x;
}

}  // namespace svjmle
