#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pfm/rng.hpp"
#include "pfm/sphere.hpp"
#include "test_util.hpp"

using namespace pfm;
using sphere::CircleKind;
using sphere::DualSphereElement;
using sphere::Params;
using sphere::SpherePhasePoint;
using sphere::SpherePoint;
using core::Complex;
using core::Mat2C;
using core::SU2Element;
using core::Su2Vector;
using testutil::expm_reference;
using testutil::random_su2;
using testutil::random_su2_vector;

namespace {

std::vector<SpherePoint> sample_orbit(const SpherePhasePoint& p0, const Params& params,
                                      double period, int n = 64) {
    std::vector<SpherePoint> points;
    for (int k = 0; k < n; ++k)
        points.push_back(sphere::hopf_project(sphere::phase_trajectory(p0, params, period * k / n).g));
    return points;
}

double unit_defect(const SpherePoint& n) {
    return std::abs(n.n1 * n.n1 + n.n2 * n.n2 + n.n3 * n.n3 - 1.0);
}

}  // namespace

TEST_CASE("classical free Hamiltonian on su(2)") {
    CHECK(sphere::classical_hamiltonian({0, 0, 0}) == 0.0);
    CHECK(sphere::classical_hamiltonian({0, 0, 1}) == 0.5);
    Rng rng(61);
    for (int i = 0; i < 50; ++i) {
        Su2Vector j = random_su2_vector(rng);
        SU2Element g = random_su2(rng);
        CHECK(sphere::classical_hamiltonian(core::adjoint_rotate(g, j)) ==
              doctest::Approx(sphere::classical_hamiltonian(j)).epsilon(1e-12));
    }
}

TEST_CASE("hopf projection: pole, quarter-turn fixture, right H-invariance") {
    SpherePoint pole = sphere::hopf_project(SU2Element::identity());
    CHECK(pole.n1 == 0.0);
    CHECK(pole.n2 == 0.0);
    CHECK(pole.n3 == 1.0);

    // Ad_{exp((pi/4) J1)} rotates J3 to -J2; oracle adjoint via the Taylor
    // exponential rather than the Rodrigues path
    Su2Vector quarter{M_PI / 4.0, 0.0, 0.0};
    SpherePoint n = sphere::hopf_project(core::su2_exp(quarter));
    CHECK(std::abs(n.n1 - 0.0) <= 1e-14);
    CHECK(std::abs(n.n2 - (-1.0)) <= 1e-14);
    CHECK(std::abs(n.n3 - 0.0) <= 1e-14);
    Mat2C g = expm_reference(quarter.matrix());
    Mat2C conj = g * core::basis_j3() * g.adjoint();
    CHECK((conj - (core::basis_j2() * (-1.0))).norm_inf() <= 1e-13);

    Rng rng(62);
    for (int i = 0; i < 50; ++i) {
        SU2Element g0 = random_su2(rng);
        SpherePoint base = sphere::hopf_project(g0);
        CHECK(unit_defect(base) <= 1e-12);
        double t = rng.uniform(-3.0, 3.0);
        SU2Element moved(g0.m * core::su2_exp({0.0, 0.0, t}).m);
        SpherePoint shifted = sphere::hopf_project(moved);
        CHECK(std::abs(shifted.n1 - base.n1) <= 1e-12);
        CHECK(std::abs(shifted.n2 - base.n2) <= 1e-12);
        CHECK(std::abs(shifted.n3 - base.n3) <= 1e-12);
    }
}

TEST_CASE("big circles: start, period, sign at half period") {
    Rng rng(63);
    SU2Element g0 = random_su2(rng);
    Su2Vector x = random_su2_vector(rng);
    double n = core::su2_norm(x);

    CHECK((sphere::big_circle(g0, x, 0.0).m - g0.m).norm_inf() == 0.0);
    CHECK((sphere::big_circle(g0, x, 2.0 * M_PI / n).m - g0.m).norm_inf() <= 1e-13);
    CHECK((sphere::big_circle(g0, x, M_PI / n).m + g0.m).norm_inf() <= 1e-13);

    // the projected orbit is planar (a circle on the sphere)
    std::vector<SpherePoint> pts;
    for (int k = 0; k < 64; ++k)
        pts.push_back(sphere::hopf_project(sphere::big_circle(g0, x, (M_PI / n) * k / 64.0)));
    sphere::CircleReport report = sphere::classify_projected_circle(pts);
    CHECK(report.fit_residual <= 1e-9);
}

TEST_CASE("classifier: point orbit, great-circle fixture, sample floor") {
    std::vector<SpherePoint> same(16, SpherePoint{0.6, 0.0, 0.8});
    CHECK(sphere::classify_projected_circle(same).kind == CircleKind::point);

    // X = J1 is metric-orthogonal to J3: a great circle with axis (1,0,0)
    std::vector<SpherePoint> great;
    for (int k = 0; k < 64; ++k)
        great.push_back(sphere::hopf_project(core::su2_exp({M_PI * k / 64.0, 0.0, 0.0})));
    sphere::CircleReport report = sphere::classify_projected_circle(great);
    CHECK(report.kind == CircleKind::great_circle);
    CHECK(std::abs(std::abs(report.axis[0]) - 1.0) <= 1e-10);
    CHECK(std::abs(report.axis[1]) <= 1e-10);
    CHECK(std::abs(report.axis[2]) <= 1e-10);

    CHECK_THROWS_AS(sphere::classify_projected_circle({same.begin(), same.begin() + 7}),
                    std::invalid_argument);
}

TEST_CASE("perpendicularity criterion matches the classifier verdict") {
    CHECK(sphere::perpendicularity_criterion({1.0, 0.0, 0.0}));
    CHECK_FALSE(sphere::perpendicularity_criterion({0.0, 0.0, 1.0}));

    Rng rng(64);
    for (int i = 0; i < 50; ++i) {
        Su2Vector x = random_su2_vector(rng);
        if (core::su2_norm(x) < 0.1) continue;
        if (std::abs(x.k3) < 1e-3 && std::abs(x.k3) > 0.0) x.k3 = 0.0;  // stay off the fence
        SU2Element g0 = random_su2(rng);
        double period = M_PI / core::su2_norm(x);
        std::vector<SpherePoint> pts;
        for (int k = 0; k < 64; ++k)
            pts.push_back(sphere::hopf_project(sphere::big_circle(g0, x, period * k / 64.0)));
        sphere::CircleReport report = sphere::classify_projected_circle(pts);
        if (report.kind == CircleKind::point) continue;
        bool projected_great = report.kind == CircleKind::great_circle;
        CHECK(projected_great == sphere::perpendicularity_criterion(x));
    }
}

TEST_CASE("deformed Hamiltonian: unitary fixture, dual fixture, conservation") {
    Params params{0.5};
    Rng rng(65);
    SU2Element u = random_su2(rng);
    auto energy = sphere::deformed_hamiltonian(u.m, params);
    CHECK(std::abs(energy.H - 1.0) <= 1e-13);
    CHECK(std::abs(energy.Htilde) <= 1e-12);

    Complex w{1.2, -0.7};
    DualSphereElement b{0.0, w};
    auto dual = sphere::deformed_hamiltonian(sphere::to_borel(b, params).matrix(), params);
    CHECK(dual.H == doctest::Approx(1.0 + 2.0 * 0.25 * std::norm(w)).epsilon(1e-14));
    CHECK(dual.Htilde == doctest::Approx(0.5 * std::norm(w)).epsilon(1e-13));

    SpherePhasePoint p0{u, {0.2, w}};
    auto h0 = sphere::deformed_hamiltonian(
        p0.g.m * sphere::to_borel(p0.b, params).matrix(), params);
    for (double t : {0.3, 1.1, 2.9}) {
        SpherePhasePoint pt = sphere::phase_trajectory(p0, params, t);
        auto ht = sphere::deformed_hamiltonian(
            pt.g.m * sphere::to_borel(pt.b, params).matrix(), params);
        CHECK(std::abs(ht.Htilde - h0.Htilde) <= 1e-10);
    }

    CHECK_THROWS_AS(sphere::deformed_hamiltonian(Mat2C{2.0, 0.0, 0.0, 1.0}, params),
                    std::invalid_argument);
}

TEST_CASE("Legendre map: rest, classical limit, constrained fixture") {
    Params params{0.7};
    Su2Vector zero = sphere::legendre({0.0, 0.0}, params);
    CHECK(zero.k1 == 0.0);
    CHECK(zero.k2 == 0.0);
    CHECK(zero.k3 == 0.0);

    DualSphereElement b{0.4, {0.9, -0.3}};
    Su2Vector nearly = sphere::legendre(b, {1e-8});
    CHECK(std::abs(nearly.k1 - 0.5 * 0.9) <= 1e-7);
    CHECK(std::abs(nearly.k2 - 0.5 * (-0.3)) <= 1e-7);
    CHECK(std::abs(nearly.k3 - 0.5 * 0.4) <= 1e-7);

    Complex w{1.1, 0.4};
    Su2Vector constrained = sphere::legendre({0.0, w}, params);
    CHECK(constrained.k1 == doctest::Approx(0.5 * w.real()).epsilon(1e-14));
    CHECK(constrained.k2 == doctest::Approx(0.5 * w.imag()).epsilon(1e-14));
    CHECK(constrained.k3 == doctest::Approx(0.5 * params.epsilon * std::norm(w)).epsilon(1e-14));
}

TEST_CASE("phase trajectory: rest, body velocity by finite differences") {
    Params params{0.35};
    Rng rng(66);
    SU2Element g0 = random_su2(rng);
    SpherePhasePoint still{g0, {0.0, 0.0}};
    SpherePhasePoint moved = sphere::phase_trajectory(still, params, 2.2);
    CHECK((moved.g.m - g0.m).norm_inf() <= 1e-14);

    SpherePhasePoint p0{g0, {0.15, {0.8, -0.5}}};
    Su2Vector f = sphere::legendre(p0.b, params);
    const double h = 1e-6;
    for (double t : {0.0, 0.9, 2.1}) {
        Mat2C gm = sphere::phase_trajectory(p0, params, t).g.m;
        Mat2C gp = sphere::phase_trajectory(p0, params, t + h).g.m;
        Mat2C gmm = sphere::phase_trajectory(p0, params, t - h).g.m;
        Mat2C body_velocity = gm.adjoint() * ((gp - gmm) * (1.0 / (2.0 * h)));
        CHECK((body_velocity - f.matrix()).norm_inf() <= 1e-8);
    }
    // b never moves
    CHECK(sphere::phase_trajectory(p0, params, 3.3).b.s == p0.b.s);
}

TEST_CASE("constraint check") {
    CHECK(sphere::constraint_check({0.0, {2.0, 1.0}}));
    CHECK_FALSE(sphere::constraint_check({0.1, {0.0, 0.0}}));
}

TEST_CASE("analytic circle geometry: fixture, rest, classical trend") {
    Params params{0.5};
    sphere::CircleReport report = sphere::circle_geometry({0.0, {2.0, 0.0}}, params);
    CHECK(report.kind == CircleKind::small_circle);
    CHECK(report.cos_polar == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(report.angular_speed == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));

    CHECK(sphere::circle_geometry({0.0, {0.0, 0.0}}, params).kind == CircleKind::point);
    CHECK_THROWS_AS(sphere::circle_geometry({0.3, {1.0, 0.0}}, params), std::invalid_argument);

    double prev = 1.0;
    for (double eps : {0.5, 0.1, 0.01, 1e-4, 1e-6}) {
        double c = sphere::circle_geometry({0.0, {2.0, 0.0}}, {eps}).cos_polar;
        CHECK(c < prev);
        prev = c;
    }
    CHECK(prev <= 2.0 * 1e-6);  // eps |w| at eps = 1e-6, |w| = 2
}

TEST_CASE("measured circles agree with the analytic geometry") {
    Rng rng(67);
    for (int i = 0; i < 100; ++i) {
        Params params{rng.uniform(0.05, 1.5)};
        DualSphereElement b{0.0, std::polar(rng.uniform(0.1, 3.0), rng.uniform(0.0, 2.0 * M_PI))};
        SU2Element g0 = random_su2(rng);
        sphere::CircleReport analytic = sphere::circle_geometry(b, params);
        double period = 2.0 * M_PI / analytic.angular_speed;
        sphere::CircleReport measured =
            sphere::classify_projected_circle(sample_orbit({g0, b}, params, period));
        CHECK(measured.kind == CircleKind::small_circle);
        CHECK(std::abs(measured.cos_polar - analytic.cos_polar) <= 1e-8);
        CHECK(measured.fit_residual <= 1e-8);
        Su2Vector axis_space = core::adjoint_rotate(
            g0, {analytic.axis[0], analytic.axis[1], analytic.axis[2]});
        double align = measured.axis[0] * axis_space.k1 + measured.axis[1] * axis_space.k2 +
                       measured.axis[2] * axis_space.k3;
        CHECK(std::abs(align) >= 1.0 - 1e-8);
    }
}

TEST_CASE("no great circles from the constrained deformed flow") {
    Rng rng(68);
    for (int i = 0; i < 100; ++i) {
        double eps = rng.uniform(0.05, 1.5);
        double aw = rng.uniform(0.1, 3.0);
        double floor = eps * aw / std::sqrt(1.0 + eps * eps * aw * aw);
        sphere::CircleReport report =
            sphere::circle_geometry({0.0, std::polar(aw, rng.uniform(0.0, 2.0 * M_PI))}, {eps});
        CHECK(report.kind == CircleKind::small_circle);
        CHECK(report.cos_polar >= floor - 1e-15);
        CHECK(report.cos_polar > 0.0);
    }
}

TEST_CASE("matrix embedding: rk4 against the exact flow, Htilde drift") {
    Params params{0.4};
    Rng rng(69);
    SU2Element g0 = random_su2(rng);
    DualSphereElement b{0.1, {0.9, 0.6}};
    Mat2C xi0 = g0.m * sphere::to_borel(b, params).matrix();

    engine::PoissonModel model = sphere::make_embedding_model(params);
    engine::IntegratorConfig config;
    config.t_end = 4.0;
    config.dt = 4.0 / 2000.0;
    engine::CompareReport report = engine::compare_exact(model, sphere::flatten(xi0), config);
    CHECK(report.status == engine::FlowStatus::ok);
    CHECK(report.max_deviation <= 1e-8);
    CHECK(report.monitor_drift[0] <= 1e-10);

    CHECK_THROWS_AS(sphere::make_embedding_model({0.0}), std::invalid_argument);
}

TEST_CASE("phase point invariant: the factorization recovers (g, b)") {
    Params params{0.6};
    Rng rng(70);
    for (int i = 0; i < 100; ++i) {
        SU2Element g = random_su2(rng);
        DualSphereElement b{rng.uniform(-0.5, 0.5), 0.8 * rng.complex_normal()};
        Mat2C xi = g.m * sphere::to_borel(b, params).matrix();
        auto f = core::factor_su2_borel(xi);
        CHECK((f.k.m - g.m).norm_inf() <= 1e-12);
        DualSphereElement back = sphere::from_borel(f.b, params);
        CHECK(std::abs(back.s - b.s) <= 1e-12);
        CHECK(std::abs(back.w - b.w) <= 1e-12);
    }
}

TEST_CASE("classical limit: Htilde and polar angle at eps = 1e-6") {
    Params params{1e-6};
    Rng rng(71);
    for (int i = 0; i < 50; ++i) {
        Complex w = std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * M_PI));
        DualSphereElement b{0.0, w};
        auto energy = sphere::deformed_hamiltonian(sphere::to_borel(b, params).matrix(), params);
        CHECK(std::abs(energy.Htilde - 0.5 * std::norm(w)) <= 1e-8);
        if (std::abs(w) > 0.0)
            CHECK(sphere::circle_geometry(b, params).cos_polar <= 2e-6);
    }
}
