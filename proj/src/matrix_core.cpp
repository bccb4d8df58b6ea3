#include "pfm/matrix_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pfm/series.hpp"

namespace pfm::core {

Mat2C basis_j1() { return Su2Vector{1.0, 0.0, 0.0}.matrix(); }
Mat2C basis_j2() { return Su2Vector{0.0, 1.0, 0.0}.matrix(); }
Mat2C basis_j3() { return Su2Vector{0.0, 0.0, 1.0}.matrix(); }

double su2_metric(const Su2Vector& x, const Su2Vector& y) {
    return x.k1 * y.k1 + x.k2 * y.k2 + x.k3 * y.k3;
}

double su2_metric(const Mat2C& x, const Mat2C& y) {
    return -0.5 * (x * y).trace().real();
}

double su2_norm(const Su2Vector& x) { return std::sqrt(su2_metric(x, x)); }

Su2Vector su2_components(const Mat2C& x) {
    return {0.5 * (x.b.imag() + x.c.imag()),
            0.5 * (x.c.real() - x.b.real()),
            0.5 * (x.a.imag() - x.d.imag())};
}

double manin_pairing(const Mat2C& x, const Mat2C& y, double epsilon) {
    if (epsilon == 0.0)
        throw std::invalid_argument("manin_pairing: epsilon must be nonzero");
    return (x * y).trace().imag() / epsilon;
}

SU2Element::SU2Element(const Mat2C& mat) : m(mat) {
    if (unitarity_defect(mat) > tol_group)
        throw std::invalid_argument("SU2Element: matrix is not unitary");
    if (std::abs(mat.det() - 1.0) > tol_group)
        throw std::invalid_argument("SU2Element: determinant is not 1");
}

SU2Element SU2Element::inverse() const {
    SU2Element g;
    g.m = m.adjoint();
    return g;
}

E2Element::E2Element(Complex alpha_, Complex gamma_) : alpha(alpha_), gamma(gamma_) {
    if (std::abs(std::abs(alpha_) - 1.0) > tol_group)
        throw std::invalid_argument("E2Element: |alpha| must be 1");
}

BorelElement::BorelElement(double rho_, Complex n_) : rho(rho_), n(n_) {
    if (!(rho_ > 0.0))
        throw std::invalid_argument("BorelElement: rho must be positive");
}

SU2Element su2_exp(const Su2Vector& x) {
    double theta = su2_norm(x);
    double c = std::cos(theta);
    double s = sinc(theta);
    Mat2C xm = x.matrix();
    SU2Element g;
    g.m = {c + s * xm.a, s * xm.b, s * xm.c, c + s * xm.d};
    return g;
}

Su2Vector adjoint_rotate(const SU2Element& g, const Su2Vector& x) {
    return su2_components(g.m * x.matrix() * g.m.adjoint());
}

namespace {

void require_unimodular(const Mat2C& m, const char* who) {
    if (std::abs(m.det() - 1.0) > tol_group)
        throw std::invalid_argument(std::string(who) + ": determinant is not 1");
}

SU2Element unchecked_su2(Complex alpha, Complex beta) {
    // columns (alpha,beta), (-conj beta, conj alpha); unitary by construction
    SU2Element g;
    g.m = {alpha, -std::conj(beta), beta, std::conj(alpha)};
    return g;
}

}  // namespace

Su2BorelFactors factor_su2_borel(const Mat2C& m) {
    require_unimodular(m, "factor_su2_borel");
    // first column of M spans the first column of k scaled by rho
    double rho = std::sqrt(std::norm(m.a) + std::norm(m.c));
    SU2Element k = unchecked_su2(m.a / rho, m.c / rho);
    // b = k^dagger M is upper triangular with diagonal (rho, 1/rho)
    Complex n = std::conj(m.a / rho) * m.b + std::conj(m.c / rho) * m.d;
    return {k, BorelElement(rho, n)};
}

BorelSu2Factors factor_borel_su2(const Mat2C& m) {
    require_unimodular(m, "factor_borel_su2");
    // second row of M is 1/rho times the second row (beta, conj alpha) of k
    double rho = 1.0 / std::sqrt(std::norm(m.c) + std::norm(m.d));
    Complex beta = rho * m.c;
    Complex alpha = std::conj(rho * m.d);
    SU2Element k = unchecked_su2(alpha, beta);
    // b = M k^dagger; its (1,2) entry
    Complex n = m.a * std::conj(beta) + m.b * alpha;
    return {BorelElement(rho, n), k};
}

E2BorelFactors factor_e2_borel(const Mat2C& m) {
    require_unimodular(m, "factor_e2_borel");
    double pivot = std::abs(m.a);
    if (pivot < decompose_min)
        throw std::domain_error("factor_e2_borel: (1,1) entry vanishes, outside the decomposable set");
    double rho = pivot;
    Complex alpha = m.a / pivot;
    E2Element l(alpha, m.c / rho);
    BorelElement u(rho, std::conj(alpha) * m.b);
    return {l, u, pivot < near_singular_min};
}

BorelE2Factors factor_borel_e2(const Mat2C& m) {
    require_unimodular(m, "factor_borel_e2");
    double pivot = std::abs(m.d);
    if (pivot < decompose_min)
        throw std::domain_error("factor_borel_e2: (2,2) entry vanishes, outside the decomposable set");
    double rho = 1.0 / pivot;
    Complex alpha = std::conj(m.d) * rho;  // conj(alpha) = M.d * rho
    E2Element l(alpha, m.c * rho);
    BorelElement u(rho, m.b * alpha);
    return {u, l, pivot < near_singular_min};
}

Su2Dressing dressing(const SU2Element& g, const BorelElement& gstar) {
    auto f = factor_borel_su2(g.m * gstar.matrix());
    return {f.b, f.k};
}

E2Dressing dressing(const E2Element& g, const BorelElement& gstar) {
    auto f = factor_borel_e2(g.matrix() * gstar.matrix());
    return {f.u, f.l, f.near_singular};
}

}  // namespace pfm::core
