// Cancellation-safe evaluation of sin(z)/z, sinh(z)/z and (e^z - 1)/z.
// Below |z| = 1e-4 the direct quotient loses digits, so a short Taylor
// series takes over (next omitted term is < 1e-19 relative there).

#pragma once

#include <cmath>
#include <complex>

namespace pfm {

inline constexpr double series_switch = 1e-4;

template <typename T>
T sinc(T z) {
    if (std::abs(z) < series_switch) {
        T z2 = z * z;
        return T(1.0) - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0;
    }
    return std::sin(z) / z;
}

template <typename T>
T sinhc(T z) {
    if (std::abs(z) < series_switch) {
        T z2 = z * z;
        return T(1.0) + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0;
    }
    return std::sinh(z) / z;
}

// (e^z - 1)/z
inline double expm1_over(double z) {
    if (std::abs(z) < series_switch)
        return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    return std::expm1(z) / z;
}

inline std::complex<double> expm1_over(std::complex<double> z) {
    if (std::abs(z) < series_switch)
        return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    return (std::exp(z) - 1.0) / z;
}

// log(1 + z)/z
inline double log1p_over(double z) {
    if (std::abs(z) < series_switch)
        return 1.0 - z / 2.0 + z * z / 3.0 - z * z * z / 4.0;
    return std::log1p(z) / z;
}

}  // namespace pfm
