#include "pfm/plane.hpp"

#include <cmath>
#include <stdexcept>

#include "pfm/newton.hpp"
#include "pfm/series.hpp"

namespace pfm::plane {

namespace {
constexpr Complex I{0.0, 1.0};
constexpr double domain_min = 1e-10;
}  // namespace

Complex domain_factor(const PhasePoint& p, const Params& params) {
    return 1.0 - I * params.epsilon * std::conj(p.x) * p.eta;
}

bool admissible(const PhasePoint& p, const Params& params) {
    return std::abs(domain_factor(p, params)) >= domain_min;
}

double config_bracket(Complex x, const Params& params) {
    return 2.0 * params.epsilon * std::norm(x);
}

engine::SquareMatrix phase_brackets(const PhasePoint& p, const Params& params) {
    // real form of {conj x, x} = 2 i eps |x|^2, {conj eta, eta} = -2 i eps |eta|^2,
    // {eta, x} = -2 i eps eta x, {eta, conj x} = 2 (1 - i eps conj(x) eta)
    const double e = params.epsilon;
    const double x1 = p.x.real(), x2 = p.x.imag();
    const double e1 = p.eta.real(), e2 = p.eta.imag();
    engine::SquareMatrix pi(4);
    auto set = [&pi](int i, int j, double v) {
        pi(i, j) = v;
        pi(j, i) = -v;
    };
    set(0, 1, e * (x1 * x1 + x2 * x2));    // {x1, x2}
    set(2, 3, -e * (e1 * e1 + e2 * e2));   // {eta1, eta2}
    set(0, 2, -(1.0 + 2.0 * e * x1 * e2)); // {x1, eta1}
    set(0, 3, 2.0 * e * x1 * e1);          // {x1, eta2}
    set(1, 2, -2.0 * e * x2 * e2);         // {x2, eta1}
    set(1, 3, -(1.0 - 2.0 * e * x2 * e1)); // {x2, eta2}
    return pi;
}

std::pair<Complex, Complex> projections(const PhasePoint& p, const Params& params) {
    Complex d = domain_factor(p, params);
    if (std::abs(d) < domain_min)
        throw std::domain_error("plane::projections: point outside the phase space");
    return {p.x, p.x / d};
}

DualElement moment(const PhasePoint& p, const Params& params) {
    Complex d = domain_factor(p, params);
    double ad = std::abs(d);
    if (ad < domain_min)
        throw std::domain_error("plane::moment: point outside the phase space");
    double s = params.epsilon == 0.0
                   ? -std::imag(std::conj(p.x) * p.eta)  // classical rotation moment
                   : -std::log(ad) / params.epsilon;
    return {p.eta * ad / d, s};
}

double hamiltonian(Complex eta) { return 0.5 * std::norm(eta); }

std::pair<Complex, Complex> eom_rhs(const PhasePoint& p, const Params& params) {
    return {p.eta, -I * params.epsilon * std::norm(p.eta) * p.eta};
}

PhasePoint exact_trajectory(const PhasePoint& p0, const Params& params, double t) {
    const double omega = 2.0 * params.epsilon * hamiltonian(p0.eta);
    Complex rot = std::exp(-I * omega * t);
    PhasePoint p;
    p.eta = p0.eta * rot;
    p.x = p0.x + p0.eta * t * expm1_over(-I * omega * t);
    return p;
}

CircleOrbit circle_params(const PhasePoint& p0, const Params& params) {
    if (params.epsilon == 0.0)
        throw std::invalid_argument("plane::circle_params: epsilon must be nonzero");
    CircleOrbit orbit;
    if (p0.eta == Complex{0.0}) {
        orbit.is_point = true;
        orbit.center = p0.x;
        return orbit;
    }
    const double omega = 2.0 * params.epsilon * hamiltonian(p0.eta);
    orbit.center = p0.x + p0.eta / (I * omega);
    orbit.radius = 1.0 / (std::abs(params.epsilon) * std::abs(p0.eta));
    orbit.period = 2.0 * M_PI / std::abs(omega);
    return orbit;
}

std::pair<Complex, Complex> qp_projections(const CotangentPoint& c, const Params& params) {
    // theta = (eps/2) conj(q) p is complex; both exponentials are genuine
    // complex exponentials, which is what makes xi_L xi_R = q^2 exact
    Complex theta = 0.5 * params.epsilon * std::conj(c.q) * c.p;
    return {std::exp(-I * theta) * c.q, std::exp(I * theta) * c.q};
}

EffectiveMomentum effective_momentum(const CotangentPoint& c, const Params& params) {
    Complex theta = 0.5 * params.epsilon * std::conj(c.q) * c.p;
    return {c.p * sinc(theta), -std::imag(std::conj(c.q) * c.p)};
}

Complex qp_trajectory(const CotangentPoint& c0, const Params& params, double t) {
    const double h = 0.5 * params.epsilon;
    Complex w0 = c0.q * std::conj(c0.p);  // (q conj p)_0
    Complex denom = std::sin(h * w0);
    if (std::abs(denom) < 1e-150)
        throw std::domain_error("plane::qp_trajectory: sin((eps/2)(q conj p)_0) vanishes");
    double twoE = std::norm(effective_momentum(c0, params).P);
    return c0.q * std::sin(h * (w0 + twoE * t)) / denom;
}

double hamiltonian_identity(Complex xi_left, Complex xi_right, const Params& params) {
    if (params.epsilon == 0.0)
        throw std::invalid_argument("plane::hamiltonian_identity: epsilon must be nonzero");
    if (xi_left == Complex{0.0} || xi_right == Complex{0.0})
        throw std::domain_error("plane::hamiltonian_identity: undefined at a zero projection");
    return 0.5 * std::norm(1.0 / xi_left - 1.0 / xi_right) / (params.epsilon * params.epsilon);
}

PhasePoint to_phase(const CotangentPoint& c, const Params& params) {
    Complex theta = 0.5 * params.epsilon * std::conj(c.q) * c.p;
    PhasePoint p;
    p.x = std::exp(-I * theta) * c.q;
    // eta solved from x/(1 - i eps conj(x) eta) = exp(i theta) q; the sinc
    // form keeps q = 0 and eps = 0 regular
    p.eta = c.p * sinc(theta) * std::exp(-2.0 * I * theta.real());
    return p;
}

CotangentPoint to_cotangent(const PhasePoint& p, const Params& params) {
    if (!admissible(p, params))
        throw std::domain_error("plane::to_cotangent: point outside the phase space");
    auto residual = [&](const detail::Vec& v) {
        PhasePoint trial = to_phase({{v[0], v[1]}, {v[2], v[3]}}, params);
        return detail::Vec{trial.x.real() - p.x.real(), trial.x.imag() - p.x.imag(),
                           trial.eta.real() - p.eta.real(), trial.eta.imag() - p.eta.imag()};
    };
    detail::Vec seed{p.x.real(), p.x.imag(), p.eta.real(), p.eta.imag()};
    detail::Vec v = detail::damped_newton(residual, seed, 1e-12, 100);
    return {{v[0], v[1]}, {v[2], v[3]}};
}

engine::Vec flatten(const PhasePoint& p) {
    return {p.x.real(), p.x.imag(), p.eta.real(), p.eta.imag()};
}

PhasePoint unflatten(const engine::Vec& v) {
    return {{v[0], v[1]}, {v[2], v[3]}};
}

engine::PoissonModel make_model(const Params& params) {
    engine::PoissonModel model;
    model.dimension = 4;
    model.bracket_table = [params](const engine::Vec& v) {
        return phase_brackets(unflatten(v), params);
    };
    model.hamiltonian = [](const engine::Vec& v) {
        return 0.5 * (v[2] * v[2] + v[3] * v[3]);
    };
    model.hamiltonian_gradient = [](const engine::Vec& v) {
        return engine::Vec{0.0, 0.0, v[2], v[3]};
    };
    model.exact_flow = [params](const engine::Vec& v, double t) {
        return flatten(exact_trajectory(unflatten(v), params, t));
    };
    model.admissible = [params](const engine::Vec& v) {
        return admissible(unflatten(v), params);
    };
    model.monitors.push_back({"H", [](const engine::Vec& v) {
                                  return 0.5 * (v[2] * v[2] + v[3] * v[3]);
                              }});
    model.monitors.push_back({"absP", [params](const engine::Vec& v) {
                                  return std::abs(moment(unflatten(v), params).P);
                              }});
    return model;
}

}  // namespace pfm::plane
