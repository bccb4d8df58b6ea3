#include "pfm/sphere.hpp"

#include <cmath>
#include <stdexcept>

#include "pfm/series.hpp"

namespace pfm::sphere {

namespace {
constexpr double point_spread = 1e-9;
constexpr double tol_great = 1e-8;

// (H - 1)/(4 eps^2) through the triangular factor of xi: the direct
// trace loses every digit of H - 1 once eps^2 |w|^2 drops under the
// rounding of tr/2 = 1, while tr(xi^dagger xi) - 2 = (rho - 1/rho)^2 + |n|^2
// stays exact in the small-eps limit
double htilde_from_matrix(const Mat2C& xi, double epsilon) {
    double rho2 = std::norm(xi.a) + std::norm(xi.c);
    double rho = std::sqrt(rho2);
    Complex n = std::conj(xi.a / rho) * xi.b + std::conj(xi.c / rho) * xi.d;
    double diff = (rho2 - 1.0) / rho;  // rho - 1/rho
    return (diff * diff + std::norm(n)) / (8.0 * epsilon * epsilon);
}
}  // namespace

core::BorelElement to_borel(const DualSphereElement& b, const Params& params) {
    return {std::exp(params.epsilon * b.s), 2.0 * params.epsilon * b.w};
}

DualSphereElement from_borel(const core::BorelElement& b, const Params& params) {
    if (params.epsilon == 0.0)
        throw std::invalid_argument("sphere::from_borel: epsilon must be nonzero");
    return {std::log(b.rho) / params.epsilon, b.n / (2.0 * params.epsilon)};
}

const char* to_string(CircleKind kind) {
    switch (kind) {
        case CircleKind::point: return "point";
        case CircleKind::great_circle: return "great_circle";
        case CircleKind::small_circle: default: return "small_circle";
    }
}

double classical_hamiltonian(const Su2Vector& j) {
    return 0.5 * core::su2_metric(j, j);
}

SpherePoint hopf_project(const SU2Element& g) {
    Su2Vector n = core::adjoint_rotate(g, {0.0, 0.0, 1.0});
    return {n.k1, n.k2, n.k3};
}

SU2Element big_circle(const SU2Element& g0, const Su2Vector& x, double t) {
    SU2Element g;
    g.m = g0.m * core::su2_exp(x.scaled(t)).m;
    return g;
}

bool perpendicularity_criterion(const Su2Vector& x) {
    return std::abs(core::su2_metric(x, {0.0, 0.0, 1.0})) <= 1e-12;
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm3(const Vec3& a) { return std::sqrt(dot(a, a)); }

// eigenvector of the smallest eigenvalue of a symmetric 3x3 matrix,
// by cyclic Jacobi rotations
Vec3 smallest_eigenvector(std::array<std::array<double, 3>, 3> a) {
    std::array<std::array<double, 3>, 3> v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-300) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (a[i][i] < a[best][best]) best = i;
    return {v[0][best], v[1][best], v[2][best]};
}

}  // namespace

CircleReport classify_projected_circle(const std::vector<SpherePoint>& samples) {
    if (samples.size() < 8)
        throw std::invalid_argument("classify_projected_circle: need at least 8 samples");
    Vec3 mean{0.0, 0.0, 0.0};
    for (const auto& s : samples) {
        mean[0] += s.n1;
        mean[1] += s.n2;
        mean[2] += s.n3;
    }
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (double& m : mean) m *= inv;

    double spread = 0.0;
    for (const auto& s : samples)
        spread = std::max(spread, norm3(sub({s.n1, s.n2, s.n3}, mean)));

    CircleReport report;
    if (spread < point_spread) {
        report.kind = CircleKind::point;
        double len = norm3(mean);
        if (len > 0.0) report.axis = {mean[0] / len, mean[1] / len, mean[2] / len};
        report.cos_polar = len;
        report.fit_residual = spread;
        return report;
    }

    std::array<std::array<double, 3>, 3> cov{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
    for (const auto& s : samples) {
        Vec3 d = sub({s.n1, s.n2, s.n3}, mean);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cov[i][j] += d[i] * d[j];
    }
    Vec3 axis = smallest_eigenvector(cov);
    double len = norm3(axis);
    for (double& c : axis) c /= len;

    double cos_polar = dot(axis, mean);
    if (cos_polar < 0.0) {
        for (double& c : axis) c = -c;
        cos_polar = -cos_polar;
    }
    double residual = 0.0;
    for (const auto& s : samples)
        residual = std::max(residual, std::abs(dot(axis, {s.n1, s.n2, s.n3}) - cos_polar));

    report.axis = axis;
    report.cos_polar = cos_polar;
    report.fit_residual = residual;
    report.kind = cos_polar < tol_great ? CircleKind::great_circle : CircleKind::small_circle;
    return report;
}

DeformedEnergy deformed_hamiltonian(const Mat2C& xi, const Params& params) {
    if (std::abs(xi.det() - 1.0) > core::tol_group)
        throw std::invalid_argument("sphere::deformed_hamiltonian: det xi must be 1");
    if (params.epsilon == 0.0)
        throw std::invalid_argument("sphere::deformed_hamiltonian: epsilon must be nonzero");
    double h = 0.5 * (xi.adjoint() * xi).trace().real();
    return {h, htilde_from_matrix(xi, params.epsilon)};
}

Su2Vector legendre(const DualSphereElement& b, const Params& params) {
    const double e = params.epsilon;
    Complex off = b.w * std::exp(-e * b.s);
    // (2 eps)^-1 sinh(2 eps s) written as s sinhc(2 eps s): regular at eps = 0
    double k3 = 0.5 * (b.s * sinhc(2.0 * e * b.s) + e * std::norm(b.w));
    return {0.5 * off.real(), 0.5 * off.imag(), k3};
}

SpherePhasePoint phase_trajectory(const SpherePhasePoint& p0, const Params& params, double t) {
    return {big_circle(p0.g, legendre(p0.b, params), t), p0.b};
}

bool constraint_check(const DualSphereElement& b) { return std::abs(b.s) <= 1e-12; }

CircleReport circle_geometry(const DualSphereElement& b, const Params& params) {
    if (!constraint_check(b))
        throw std::invalid_argument("sphere::circle_geometry: requires s = 0");
    CircleReport report;
    double aw = std::abs(b.w);
    if (aw == 0.0) {
        report.kind = CircleKind::point;
        return report;
    }
    const double e = params.epsilon;
    Su2Vector f = legendre({0.0, b.w}, params);
    double fn = core::su2_norm(f);
    report.axis = {f.k1 / fn, f.k2 / fn, f.k3 / fn};
    report.cos_polar = std::abs(e) * aw / std::sqrt(1.0 + e * e * aw * aw);
    if (report.axis[2] < 0.0)
        for (double& c : report.axis) c = -c;
    report.angular_speed = 2.0 * fn;
    report.kind = CircleKind::small_circle;
    return report;
}

engine::Vec flatten(const Mat2C& xi) {
    return {xi.a.real(), xi.a.imag(), xi.b.real(), xi.b.imag(),
            xi.c.real(), xi.c.imag(), xi.d.real(), xi.d.imag()};
}

Mat2C unflatten(const engine::Vec& v) {
    return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
}

engine::PoissonModel make_embedding_model(const Params& params) {
    if (params.epsilon == 0.0)
        throw std::invalid_argument("sphere::make_embedding_model: epsilon must be nonzero");
    engine::PoissonModel model;
    model.dimension = 8;
    // the symplectic form on SL(2,C) is not in scope; the flow is supplied
    // directly as xi_dot = g F(b) b along xi = g b
    model.vector_field = [params](const engine::Vec& v) {
        Mat2C xi = unflatten(v);
        xi = xi * (1.0 / std::sqrt(xi.det()));  // re-project onto det = 1
        auto f = core::factor_su2_borel(xi);
        DualSphereElement b = from_borel(f.b, params);
        return flatten(f.k.m * legendre(b, params).matrix() * f.b.matrix());
    };
    model.hamiltonian = [params](const engine::Vec& v) {
        return htilde_from_matrix(unflatten(v), params.epsilon);
    };
    model.exact_flow = [params](const engine::Vec& v, double t) {
        auto f = core::factor_su2_borel(unflatten(v));
        SpherePhasePoint p0{f.k, from_borel(f.b, params)};
        SpherePhasePoint pt = phase_trajectory(p0, params, t);
        return flatten(pt.g.m * to_borel(pt.b, params).matrix());
    };
    model.monitors.push_back({"Htilde", [params](const engine::Vec& v) {
                                  return htilde_from_matrix(unflatten(v), params.epsilon);
                              }});
    return model;
}

}  // namespace pfm::sphere
