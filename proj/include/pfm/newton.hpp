// Damped Newton iteration for the small coordinate-change inversions.
// Jacobians by central differences; dense solve with partial pivoting
// (systems here are 4x4).

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace pfm::detail {

using Vec = std::vector<double>;

// in-place Gaussian elimination with partial pivoting
inline Vec solve_dense(std::vector<Vec> a, Vec rhs) {
    const size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300)
            throw std::runtime_error("solve_dense: singular Jacobian");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Vec x(n, 0.0);
    for (size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

inline double norm_inf(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Solves F(x) = 0. Throws std::runtime_error after max_iter iterations
// without reaching ||F||_inf <= tol.
inline Vec damped_newton(const std::function<Vec(const Vec&)>& f, Vec x,
                         double tol, int max_iter) {
    const size_t n = x.size();
    Vec fx = f(x);
    for (int iter = 0; iter < max_iter; ++iter) {
        double r = norm_inf(fx);
        if (r <= tol) return x;
        std::vector<Vec> jac(n, Vec(n, 0.0));
        for (size_t j = 0; j < n; ++j) {
            double h = 1e-7 * std::max(1.0, std::abs(x[j]));
            Vec up = x, dn = x;
            up[j] += h;
            dn[j] -= h;
            Vec fu = f(up), fd = f(dn);
            for (size_t i = 0; i < n; ++i) jac[i][j] = (fu[i] - fd[i]) / (2.0 * h);
        }
        Vec step = solve_dense(jac, fx);
        double damp = 1.0;
        bool moved = false;
        for (int back = 0; back < 40; ++back) {
            Vec trial(n);
            for (size_t i = 0; i < n; ++i) trial[i] = x[i] - damp * step[i];
            Vec ft = f(trial);
            if (norm_inf(ft) < r) {
                x = std::move(trial);
                fx = std::move(ft);
                moved = true;
                break;
            }
            damp *= 0.5;
        }
        if (!moved) break;  // stalled: no damping of this direction descends
    }
    if (norm_inf(fx) <= tol) return x;
    throw std::runtime_error("damped_newton: no convergence");
}

}  // namespace pfm::detail
