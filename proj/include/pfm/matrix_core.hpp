// su(2)/sl(2,C) structure constants and the Manin-group factorizations.
//
// Two Manin triples are supported, both inside SL(2,C):
//   (SL(2,C); SU(2), B)    with B the upper-triangular positive-diagonal
//                          subgroup ("Borel"),
//   (SL(2,C); E(2), B)     with E(2) realised as lower-triangular
//                          unit-determinant matrices [[alpha,0],[gamma,conj(alpha)]].
// The pairing making both splittings isotropic is (1/eps) Im tr(XY).
//
// The su2/Borel factorizations are global on SL(2,C); the E(2)/Borel ones
// fail on the set where the pivot entry vanishes, which is the boundary of
// the groupoid phase space. Factorizations throw std::domain_error there
// and flag a near_singular warning when the pivot is merely small.

#pragma once

#include <array>
#include <complex>

#include "pfm/mat2.hpp"

namespace pfm::core {

inline constexpr double tol_group = 1e-12;       // group-membership checks
inline constexpr double tol_recompose = 1e-12;   // factor-recompose residuals
inline constexpr double decompose_min = 1e-10;   // pivot below this: outside Ph G
inline constexpr double near_singular_min = 1e-6;  // pivot below this: warn

// su(2) vector in the orthogonal basis
//   J1 = [[0,i],[i,0]],  J2 = [[0,-1],[1,0]],  J3 = [[i,0],[0,-i]],
// which satisfies [Ja,Jb] = 2 eps_abc Jc and is orthonormal for the
// invariant metric <X,Y> = -1/2 Re tr(XY).
struct Su2Vector {
    double k1 = 0.0, k2 = 0.0, k3 = 0.0;

    Mat2C matrix() const {
        return {Complex(0.0, k3), Complex(-k2, k1),
                Complex(k2, k1), Complex(0.0, -k3)};
    }
    Su2Vector scaled(double s) const { return {k1 * s, k2 * s, k3 * s}; }
};

Mat2C basis_j1();
Mat2C basis_j2();
Mat2C basis_j3();

// invariant metric -1/2 Re tr(XY); J1,J2,J3 are orthonormal
double su2_metric(const Su2Vector& x, const Su2Vector& y);
double su2_metric(const Mat2C& x, const Mat2C& y);
double su2_norm(const Su2Vector& x);

// components of a traceless anti-hermitian matrix in the J basis
Su2Vector su2_components(const Mat2C& x);

// Manin pairing (1/eps) Im tr(XY); throws std::invalid_argument at eps = 0
double manin_pairing(const Mat2C& x, const Mat2C& y, double epsilon);

struct SU2Element {
    Mat2C m = Mat2C::identity();

    SU2Element() = default;
    // validates unitarity and det = 1 within tol_group
    explicit SU2Element(const Mat2C& mat);

    static SU2Element identity() { return SU2Element{}; }
    SU2Element inverse() const;  // adjoint; exact for unitary input
};

// lower-triangular [[alpha,0],[gamma,conj(alpha)]] with |alpha| = 1
struct E2Element {
    Complex alpha{1.0};
    Complex gamma{0.0};

    E2Element() = default;
    E2Element(Complex alpha_, Complex gamma_);

    static E2Element identity() { return E2Element{}; }
    Mat2C matrix() const { return {alpha, 0.0, gamma, std::conj(alpha)}; }
    // coordinate of the projection E(2) -> Q = C, x = conj(alpha) gamma
    Complex config_coordinate() const { return std::conj(alpha) * gamma; }
};

// upper-triangular [[rho,n],[0,1/rho]] with rho > 0
struct BorelElement {
    double rho = 1.0;
    Complex n{0.0};

    BorelElement() = default;
    BorelElement(double rho_, Complex n_);

    static BorelElement identity() { return BorelElement{}; }
    Mat2C matrix() const { return {rho, n, 0.0, 1.0 / rho}; }
};

// closed-form Rodrigues exponential, exact for every norm including 0:
// exp(X) = cos|X| + sinc(|X|) X
SU2Element su2_exp(const Su2Vector& x);

// components of Ad_g(X) = g X g^-1 in the J basis (a rotation of R^3)
Su2Vector adjoint_rotate(const SU2Element& g, const Su2Vector& x);

// M = k b, k in SU(2), b Borel (global on SL(2,C); pre det M = 1)
struct Su2BorelFactors {
    SU2Element k;
    BorelElement b;
};
Su2BorelFactors factor_su2_borel(const Mat2C& m);

// M = b k, the other order (also global)
struct BorelSu2Factors {
    BorelElement b;
    SU2Element k;
};
BorelSu2Factors factor_borel_su2(const Mat2C& m);

// M = l u with l in E(2), u Borel; needs |M.a| >= decompose_min
struct E2BorelFactors {
    E2Element l;
    BorelElement u;
    bool near_singular = false;
};
E2BorelFactors factor_e2_borel(const Mat2C& m);

// M = u l; needs |M.d| >= decompose_min
struct BorelE2Factors {
    BorelElement u;
    E2Element l;
    bool near_singular = false;
};
BorelE2Factors factor_borel_e2(const Mat2C& m);

// dressing: refactor g.gstar as (dressed gstar).(remainder g)
struct Su2Dressing {
    BorelElement dressed;
    SU2Element remainder;
};
Su2Dressing dressing(const SU2Element& g, const BorelElement& gstar);

struct E2Dressing {
    BorelElement dressed;
    E2Element remainder;
    bool near_singular = false;
};
E2Dressing dressing(const E2Element& g, const BorelElement& gstar);

}  // namespace pfm::core
