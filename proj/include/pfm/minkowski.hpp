// Deformed free particle on 2D Minkowski space-time in light-cone
// coordinates (x+, x-, eta+, eta-).
//
// Phase space is the connected component where both factors
//   A = 1 + eps eta- x-,   B = 1 - eps eta+ x+
// are strictly positive; the groupoid projections, moment map and
// Hamiltonian flow of H = eta+ eta- are all closed-form. The flow
// preserves the Casimir eta+ eta- and traces the hyperbola
//   (x+ - c+)(x- - c-) = -1/(eps^2 mu^2),  mu^2 = eta+ eta-.
//
// A commuting-coordinate chart (q, p) with canonical brackets
// ({p_+, q^+} = {p_-, q^-} = 1 under the flow convention zdot = {H, z})
// covers the same phase space; the two charts are identified by matching
// groupoid projections.

#pragma once

#include <array>

#include "pfm/bracket_engine.hpp"

namespace pfm::mink {

struct Params {
    double epsilon = 0.1;
    double mass = 1.0;
};

struct PhasePoint {
    double xp = 0.0, xm = 0.0;      // light-cone positions x+, x-
    double etap = 0.0, etam = 0.0;  // momenta eta+, eta-
};

struct CotangentPoint {
    double qp = 0.0, qm = 0.0;
    double pp = 0.0, pm = 0.0;
};

// the two positivity factors A, B defining the phase-space component
std::array<double, 2> domain_factors(const PhasePoint& p, const Params& params);
bool admissible(const PhasePoint& p, const Params& params);
bool on_mass_shell(const PhasePoint& p, const Params& params, double tol = 1e-10);

// bracket table over (x+, x-, eta+, eta-); entries pi_ij = {z_i, z_j}
engine::SquareMatrix brackets(const PhasePoint& p, const Params& params);

std::array<double, 2> left_projection(const PhasePoint& p);
std::array<double, 2> right_projection(const PhasePoint& p, const Params& params);

// moment map into G*: (P+, P-, s); conserved along the flow and carrying
// the Casimir, P+ P- = eta+ eta-
struct DualMomentum {
    double Pp = 0.0, Pm = 0.0, s = 0.0;
};
DualMomentum moment(const PhasePoint& p, const Params& params);

std::array<double, 4> eom_rhs(const PhasePoint& p, const Params& params);

PhasePoint exact_trajectory(const PhasePoint& p0, const Params& params, double t);

// centre of the hyperbola traced by the trajectory through p; requires
// eps * eta+ eta- != 0
struct HyperbolaConstants {
    double cp = 0.0, cm = 0.0;
};
HyperbolaConstants hyperbola_constants(const PhasePoint& p, const Params& params);

struct QpProjections {
    std::array<double, 2> left;
    std::array<double, 2> right;
};
QpProjections qp_projections(const CotangentPoint& c, const Params& params);

struct QpMomentum {
    double Pp = 0.0, Pm = 0.0;
    double Pip = 0.0, Pim = 0.0;  // Pi+- = p+- q+-
    double j3 = 0.0;              // Pi+ - Pi-
};
QpMomentum qp_moment(const CotangentPoint& c, const Params& params);

// world line in the commuting chart, parametrised by tau (Pi+ = tau,
// Pi- = tau - b); requires mass > 0 and epsilon != 0
std::array<double, 2> qp_worldline(double a, double b, const Params& params, double tau);

// chart change by identification of the groupoid projections
PhasePoint to_phase(const CotangentPoint& c, const Params& params);
CotangentPoint to_cotangent(const PhasePoint& p, const Params& params);

// engine adapter; state order (x+, x-, eta+, eta-), monitor "casimir"
engine::PoissonModel make_model(const Params& params);

engine::Vec flatten(const PhasePoint& p);
PhasePoint unflatten(const engine::Vec& v);

}  // namespace pfm::mink
