// Complex 2x2 matrices: the only linear algebra this library needs.
// Everything lives in SL(2,C) or one of its subgroups, so a fixed-size
// value type beats a general matrix library here.

#pragma once

#include <complex>

namespace pfm::core {

using Complex = std::complex<double>;

struct Mat2C {
    Complex a{0.0}, b{0.0};  // row 1
    Complex c{0.0}, d{0.0};  // row 2

    static Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2C zero() { return {}; }

    Complex det() const { return a * d - b * c; }
    Complex trace() const { return a + d; }

    Mat2C adjoint() const {
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }

    Mat2C operator+(const Mat2C& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2C operator-(const Mat2C& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }

    Mat2C operator*(const Mat2C& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Mat2C operator*(Complex s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2C operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

    // max-abs entry; used for all recomposition residuals
    double norm_inf() const {
        double m = std::abs(a);
        if (std::abs(b) > m) m = std::abs(b);
        if (std::abs(c) > m) m = std::abs(c);
        if (std::abs(d) > m) m = std::abs(d);
        return m;
    }
};

inline Mat2C operator*(Complex s, const Mat2C& m) { return m * s; }
inline Mat2C operator*(double s, const Mat2C& m) { return m * s; }

// defect against the unit matrix, ||m^dagger m - 1||_inf
inline double unitarity_defect(const Mat2C& m) {
    return (m.adjoint() * m - Mat2C::identity()).norm_inf();
}

}  // namespace pfm::core
