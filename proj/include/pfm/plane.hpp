// Deformed free motion on the Poisson plane (E(2) symmetry).
//
// Configuration is the complex plane with {conj x, x} = 2 i eps |x|^2;
// phase points are pairs (x, eta) with the bracket table of the E(2)
// symplectic groupoid. The free Hamiltonian H = |eta|^2 / 2 turns every
// trajectory into a circle of radius 1/(eps |eta0|) — or a point — never
// a straight line.
//
// The commuting chart (q, p) has {p, conj q} = 2 as the only nonzero
// bracket (in real coordinates {p_j, q^k} = delta_jk under zdot = {H, z});
// its projections are q rotated by exp(-+ i (eps/2) conj(q) p), whence
// xi_L xi_R = q^2 exactly, and the Hamiltonian satisfies
// 2 eps^2 H = |1/xi_L - 1/xi_R|^2.

#pragma once

#include <complex>
#include <utility>

#include "pfm/bracket_engine.hpp"

namespace pfm::plane {

using Complex = std::complex<double>;

struct Params {
    double epsilon = 0.1;
};

struct PhasePoint {
    Complex x{0.0};
    Complex eta{0.0};
};

struct CotangentPoint {
    Complex q{0.0};
    Complex p{0.0};
};

// momentum chart of G*: (P, s) with rho = exp(eps s), n = i eps conj(P)
struct DualElement {
    Complex P{0.0};
    double s = 0.0;
};

// the factor D = 1 - i eps conj(x) eta whose vanishing bounds the phase space
Complex domain_factor(const PhasePoint& p, const Params& params);
bool admissible(const PhasePoint& p, const Params& params);

// coefficient of i in {conj x, x} = 2 i eps |x|^2, i.e. 2 eps |x|^2;
// the real form is {x1, x2} = eps |x|^2
double config_bracket(Complex x, const Params& params);

// table over (x1, x2, eta1, eta2); entries pi_ij = {z_i, z_j}
engine::SquareMatrix phase_brackets(const PhasePoint& p, const Params& params);

// (left, right) groupoid projections
std::pair<Complex, Complex> projections(const PhasePoint& p, const Params& params);

DualElement moment(const PhasePoint& p, const Params& params);

double hamiltonian(Complex eta);

std::pair<Complex, Complex> eom_rhs(const PhasePoint& p, const Params& params);

PhasePoint exact_trajectory(const PhasePoint& p0, const Params& params, double t);

struct CircleOrbit {
    bool is_point = false;
    Complex center{0.0};
    double radius = 0.0;
    double period = 0.0;
};
// requires epsilon != 0; eta0 = 0 yields the is_point variant
CircleOrbit circle_params(const PhasePoint& p0, const Params& params);

std::pair<Complex, Complex> qp_projections(const CotangentPoint& c, const Params& params);

struct EffectiveMomentum {
    Complex P{0.0};
    double j_s = 0.0;  // -Im conj(q) p
};
EffectiveMomentum effective_momentum(const CotangentPoint& c, const Params& params);

// position in the commuting chart at time t; throws std::domain_error when
// sin((eps/2)(q conj p)_0) vanishes
Complex qp_trajectory(const CotangentPoint& c0, const Params& params, double t);

// (1/(2 eps^2)) |1/xi_L - 1/xi_R|^2, which equals |eta|^2/2
double hamiltonian_identity(Complex xi_left, Complex xi_right, const Params& params);

PhasePoint to_phase(const CotangentPoint& c, const Params& params);
CotangentPoint to_cotangent(const PhasePoint& p, const Params& params);

// engine adapter; state order (x1, x2, eta1, eta2), monitors "H", "absP"
engine::PoissonModel make_model(const Params& params);

engine::Vec flatten(const PhasePoint& p);
PhasePoint unflatten(const engine::Vec& v);

}  // namespace pfm::plane
