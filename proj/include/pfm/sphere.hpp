// Free motion on the Poisson sphere S^2 = SU(2)/S^1.
//
// Classically, free trajectories on SU(2) are translated one-parameter
// subgroups ("big circles"); projecting all of them to S^2 yields every
// circle, but the constrained ones (generator metric-orthogonal to J3)
// project exactly to great circles or points.
//
// In the deformed picture the phase trajectory xi(t) = g(t) b in SL(2,C)
// has b constant and g^-1 gdot = F(b), the deformed Legendre map. For b
// in the momentum space over the sphere (s = 0), F(b) acquires a J3
// component eps |w|^2 / 2 that vanishes only at w = 0, so the projected
// trajectories are small circles with
//   cos(polar angle) = eps |w| / sqrt(1 + eps^2 |w|^2)
// — every circle on S^2 occurs except the big ones.

#pragma once

#include <array>
#include <vector>

#include "pfm/bracket_engine.hpp"
#include "pfm/matrix_core.hpp"

namespace pfm::sphere {

using core::Complex;
using core::Mat2C;
using core::SU2Element;
using core::Su2Vector;

struct Params {
    double epsilon = 0.1;
};

// element of G* in the (s, w) chart: b = [[e^{eps s}, 2 eps w], [0, e^{-eps s}]]
struct DualSphereElement {
    double s = 0.0;
    Complex w{0.0};
};

core::BorelElement to_borel(const DualSphereElement& b, const Params& params);
DualSphereElement from_borel(const core::BorelElement& b, const Params& params);

struct SpherePhasePoint {
    SU2Element g;
    DualSphereElement b;
};

struct SpherePoint {
    double n1 = 0.0, n2 = 0.0, n3 = 1.0;
};

enum class CircleKind { point, great_circle, small_circle };

struct CircleReport {
    CircleKind kind = CircleKind::point;
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    double cos_polar = 1.0;       // oriented so cos_polar >= 0
    double angular_speed = 0.0;   // analytic reports only; 0 when not measured
    double fit_residual = 0.0;    // max out-of-plane deviation of the samples
};

const char* to_string(CircleKind kind);

double classical_hamiltonian(const Su2Vector& j);

// quotient map SU(2) -> S^2, g |-> Ad_g(J3) in the J basis; constant on
// right cosets of the S^1 generated by J3
SpherePoint hopf_project(const SU2Element& g);

SU2Element big_circle(const SU2Element& g0, const Su2Vector& x, double t);

// plane fit through >= 8 samples via the smallest-eigenvalue direction of
// the sample covariance; kind thresholds: spread < 1e-9 -> point,
// |cos_polar| < 1e-8 -> great circle
CircleReport classify_projected_circle(const std::vector<SpherePoint>& samples);

// metric orthogonality of the generator to J3 — holds exactly when the
// projected big circle is great (or a point)
bool perpendicularity_criterion(const Su2Vector& x);

struct DeformedEnergy {
    double H = 0.0;       // (1/2) tr xi^dagger xi
    double Htilde = 0.0;  // (H - 1)/(4 eps^2)
};
DeformedEnergy deformed_hamiltonian(const Mat2C& xi, const Params& params);

// deformed Legendre transformation F(b) = body-frame velocity g^-1 gdot
Su2Vector legendre(const DualSphereElement& b, const Params& params);

// g(t) = g0 exp(t F(b0)), b(t) = b0
SpherePhasePoint phase_trajectory(const SpherePhasePoint& p0, const Params& params, double t);

// b lies in the momentum space over the sphere iff s = 0
bool constraint_check(const DualSphereElement& b);

// analytic circle geometry of the projected trajectory for s = 0, axis in
// the body frame at g0 = identity; never reports a great circle
CircleReport circle_geometry(const DualSphereElement& b, const Params& params);

// engine adapter over the matrix embedding xi in SL(2,C), flattened to
// 8 reals (Re/Im of entries row-major); monitor "Htilde"; requires eps != 0
engine::PoissonModel make_embedding_model(const Params& params);

engine::Vec flatten(const Mat2C& xi);
Mat2C unflatten(const engine::Vec& v);

}  // namespace pfm::sphere
