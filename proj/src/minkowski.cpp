#include "pfm/minkowski.hpp"

#include <cmath>
#include <stdexcept>

#include "pfm/newton.hpp"
#include "pfm/series.hpp"

namespace pfm::mink {

std::array<double, 2> domain_factors(const PhasePoint& p, const Params& params) {
    return {1.0 + params.epsilon * p.etam * p.xm,
            1.0 - params.epsilon * p.etap * p.xp};
}

bool admissible(const PhasePoint& p, const Params& params) {
    auto [a, b] = domain_factors(p, params);
    return a > 0.0 && b > 0.0;
}

bool on_mass_shell(const PhasePoint& p, const Params& params, double tol) {
    return std::abs(p.etap * p.etam - params.mass * params.mass) <= tol;
}

engine::SquareMatrix brackets(const PhasePoint& p, const Params& params) {
    const double e = params.epsilon;
    engine::SquareMatrix pi(4);
    auto set = [&pi](int i, int j, double v) {
        pi(i, j) = v;
        pi(j, i) = -v;
    };
    set(0, 1, e * p.xp * p.xm);            // {x+, x-}
    set(0, 2, -(1.0 - e * p.etap * p.xp)); // {x+, eta+}
    set(0, 3, -e * p.etam * p.xp);         // {x+, eta-}
    set(1, 2, e * p.etap * p.xm);          // {x-, eta+}
    set(1, 3, -(1.0 + e * p.etam * p.xm)); // {x-, eta-}
    set(2, 3, e * p.etap * p.etam);        // {eta+, eta-}
    return pi;
}

std::array<double, 2> left_projection(const PhasePoint& p) { return {p.xp, p.xm}; }

std::array<double, 2> right_projection(const PhasePoint& p, const Params& params) {
    auto [a, b] = domain_factors(p, params);
    if (a <= 0.0 || b <= 0.0)
        throw std::domain_error("mink::right_projection: point outside the phase space");
    return {p.xp / a, p.xm / b};
}

DualMomentum moment(const PhasePoint& p, const Params& params) {
    auto [a, b] = domain_factors(p, params);
    if (a <= 0.0 || b <= 0.0)
        throw std::domain_error("mink::moment: point outside the phase space");
    double r = std::sqrt(a / b);
    // s = -(1/eps) log(A B), written through log1p(z)/z so the eps -> 0
    // limit (the classical boost moment) comes out without cancellation
    const double e = params.epsilon;
    double u = e * p.etam * p.xm;
    double v = -e * p.etap * p.xp;
    double s = p.etap * p.xp * log1p_over(v) - p.etam * p.xm * log1p_over(u);
    return {p.etap * r, p.etam / r, s};
}

std::array<double, 4> eom_rhs(const PhasePoint& p, const Params& params) {
    const double e = params.epsilon;
    return {p.etam, p.etap,
            -e * p.etam * p.etap * p.etap,
            e * p.etap * p.etam * p.etam};
}

PhasePoint exact_trajectory(const PhasePoint& p0, const Params& params, double t) {
    const double mu2 = p0.etap * p0.etam;  // conserved
    const double z = params.epsilon * mu2 * t;
    PhasePoint p;
    p.etap = p0.etap * std::exp(-z);
    p.etam = p0.etam * std::exp(z);
    p.xp = p0.xp + p0.etam * t * expm1_over(z);
    p.xm = p0.xm + p0.etap * t * expm1_over(-z);
    return p;
}

HyperbolaConstants hyperbola_constants(const PhasePoint& p, const Params& params) {
    const double mu2 = p.etap * p.etam;
    const double emu2 = params.epsilon * mu2;
    if (emu2 == 0.0)
        throw std::invalid_argument("mink::hyperbola_constants: eps * eta+ eta- must be nonzero");
    return {p.xp - p.etam / emu2, p.xm + p.etap / emu2};
}

QpProjections qp_projections(const CotangentPoint& c, const Params& params) {
    const double h = 0.5 * params.epsilon;
    const double pip = c.pp * c.qp, pim = c.pm * c.qm;
    return {{c.qp * std::exp(h * pim), c.qm * std::exp(-h * pip)},
            {c.qp * std::exp(-h * pim), c.qm * std::exp(h * pip)}};
}

QpMomentum qp_moment(const CotangentPoint& c, const Params& params) {
    const double h = 0.5 * params.epsilon;
    QpMomentum m;
    m.Pip = c.pp * c.qp;
    m.Pim = c.pm * c.qm;
    m.Pp = c.pp * sinhc(h * m.Pip);
    m.Pm = c.pm * sinhc(h * m.Pim);
    m.j3 = m.Pip - m.Pim;
    return m;
}

std::array<double, 2> qp_worldline(double a, double b, const Params& params, double tau) {
    if (!(params.mass > 0.0))
        throw std::invalid_argument("mink::qp_worldline: mass must be positive");
    if (params.epsilon == 0.0)
        throw std::invalid_argument("mink::qp_worldline: epsilon must be nonzero");
    const double h = 0.5 * params.epsilon;
    return {std::exp(a) * std::sinh(h * tau) / (h * params.mass),
            std::exp(-a) * std::sinh(h * (tau - b)) / (h * params.mass)};
}

PhasePoint to_phase(const CotangentPoint& c, const Params& params) {
    const double e = params.epsilon;
    const double h = 0.5 * e;
    const double pip = c.pp * c.qp, pim = c.pm * c.qm;
    PhasePoint p;
    p.xp = c.qp * std::exp(h * pim);
    p.xm = c.qm * std::exp(-h * pip);
    // eta+- solved from matching the right projection; written so q = 0
    // and eps = 0 are regular
    p.etap = c.pp * expm1_over(-e * pip) * std::exp(-h * pim);
    p.etam = c.pm * expm1_over(e * pim) * std::exp(h * pip);
    return p;
}

CotangentPoint to_cotangent(const PhasePoint& p, const Params& params) {
    if (!admissible(p, params))
        throw std::domain_error("mink::to_cotangent: point outside the phase space");
    auto residual = [&](const detail::Vec& v) {
        PhasePoint trial = to_phase({v[0], v[1], v[2], v[3]}, params);
        return detail::Vec{trial.xp - p.xp, trial.xm - p.xm,
                           trial.etap - p.etap, trial.etam - p.etam};
    };
    detail::Vec seed{p.xp, p.xm, p.etap, p.etam};
    detail::Vec v = detail::damped_newton(residual, seed, 1e-12, 100);
    return {v[0], v[1], v[2], v[3]};
}

engine::Vec flatten(const PhasePoint& p) { return {p.xp, p.xm, p.etap, p.etam}; }

PhasePoint unflatten(const engine::Vec& v) { return {v[0], v[1], v[2], v[3]}; }

engine::PoissonModel make_model(const Params& params) {
    engine::PoissonModel model;
    model.dimension = 4;
    model.bracket_table = [params](const engine::Vec& v) {
        return brackets(unflatten(v), params);
    };
    model.hamiltonian = [](const engine::Vec& v) { return v[2] * v[3]; };
    model.hamiltonian_gradient = [](const engine::Vec& v) {
        return engine::Vec{0.0, 0.0, v[3], v[2]};
    };
    model.exact_flow = [params](const engine::Vec& v, double t) {
        return flatten(exact_trajectory(unflatten(v), params, t));
    };
    model.admissible = [params](const engine::Vec& v) {
        return admissible(unflatten(v), params);
    };
    model.monitors.push_back({"casimir", [](const engine::Vec& v) { return v[2] * v[3]; }});
    return model;
}

}  // namespace pfm::mink
