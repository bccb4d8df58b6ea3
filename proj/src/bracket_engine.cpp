#include "pfm/bracket_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pfm::engine {

double SquareMatrix::antisymmetry_defect() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) + (*this)(j, i)));
    return worst;
}

Vec hamiltonian_rhs(const PoissonModel& model, const Vec& point) {
    if (model.vector_field) return model.vector_field(point);
    SquareMatrix pi = model.bracket_table(point);
    Vec grad = model.hamiltonian_gradient(point);
    Vec rhs(model.dimension, 0.0);
    for (int i = 0; i < model.dimension; ++i) {
        double s = 0.0;
        for (int j = 0; j < model.dimension; ++j) s += pi(j, i) * grad[j];
        rhs[i] = s;
    }
    return rhs;
}

// Kutta's 3/8 tableau; fourth order with a smaller truncation constant
// than the halved-step tableau on the rotational flows integrated here
Vec rk4_step(const PoissonModel& model, const Vec& point, double dt) {
    const int n = model.dimension;
    Vec k1 = hamiltonian_rhs(model, point);
    Vec tmp(n);
    for (int i = 0; i < n; ++i) tmp[i] = point[i] + dt / 3.0 * k1[i];
    Vec k2 = hamiltonian_rhs(model, tmp);
    for (int i = 0; i < n; ++i) tmp[i] = point[i] + dt * (k2[i] - k1[i] / 3.0);
    Vec k3 = hamiltonian_rhs(model, tmp);
    for (int i = 0; i < n; ++i) tmp[i] = point[i] + dt * (k1[i] - k2[i] + k3[i]);
    Vec k4 = hamiltonian_rhs(model, tmp);
    Vec out(n);
    for (int i = 0; i < n; ++i)
        out[i] = point[i] + dt / 8.0 * (k1[i] + 3.0 * (k2[i] + k3[i]) + k4[i]);
    return out;
}

namespace {

void validate(const PoissonModel& model, const Vec& point0, const IntegratorConfig& config) {
    if (!(config.dt > 0.0))
        throw std::invalid_argument("integrate: dt must be positive");
    if (config.max_steps < 1)
        throw std::invalid_argument("integrate: max_steps must be at least 1");
    if (static_cast<int>(point0.size()) != model.dimension)
        throw std::invalid_argument("integrate: state dimension mismatch");
    if (model.admissible && !model.admissible(point0))
        throw std::domain_error("integrate: initial point outside the model domain");
}

void append(Trajectory& traj, const PoissonModel& model, double t, const Vec& state) {
    traj.times.push_back(t);
    traj.states.push_back(state);
    for (size_t m = 0; m < model.monitors.size(); ++m)
        traj.monitor_values[m].push_back(model.monitors[m].eval(state));
}

Trajectory make_empty(const PoissonModel& model, Method method) {
    Trajectory traj;
    traj.method = method;
    traj.monitor_values.resize(model.monitors.size());
    for (const auto& m : model.monitors) traj.monitor_names.push_back(m.name);
    return traj;
}

double state_distance(const Vec& a, const Vec& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// uniform grid t_k = k dt with the last node pinned to t_end exactly
long grid_steps(double t_end, double dt) {
    if (t_end <= 0.0) return 0;
    return std::max<long>(1, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
}

Trajectory integrate_fixed(const PoissonModel& model, const Vec& point0,
                           const IntegratorConfig& config) {
    Trajectory traj = make_empty(model, Method::rk4);
    append(traj, model, 0.0, point0);
    Vec state = point0;
    const long n = grid_steps(config.t_end, config.dt);
    double t_prev = 0.0;
    for (long k = 1; k <= n; ++k) {
        if (k > config.max_steps) {
            traj.status = FlowStatus::max_steps_exceeded;
            return traj;
        }
        double t_next = (k == n) ? config.t_end : k * config.dt;
        Vec next = rk4_step(model, state, t_next - t_prev);
        if (model.admissible && !model.admissible(next)) {
            traj.status = FlowStatus::domain_exit;
            return traj;
        }
        t_prev = t_next;
        state = std::move(next);
        append(traj, model, t_next, state);
    }
    return traj;
}

Trajectory integrate_adaptive(const PoissonModel& model, const Vec& point0,
                              const IntegratorConfig& config) {
    Trajectory traj = make_empty(model, Method::adaptive);
    append(traj, model, 0.0, point0);
    Vec state = point0;
    double t = 0.0;
    double h = config.dt;
    long steps = 0;
    const double safety = 0.9, grow_min = 0.2, grow_max = 5.0;
    while (t < config.t_end - 1e-15 * std::max(1.0, std::abs(config.t_end))) {
        if (steps++ >= config.max_steps) {
            traj.status = FlowStatus::max_steps_exceeded;
            return traj;
        }
        h = std::min(h, config.t_end - t);
        Vec full = rk4_step(model, state, h);
        Vec half = rk4_step(model, rk4_step(model, state, 0.5 * h), 0.5 * h);
        double err = state_distance(full, half) / 15.0;  // local error of the halved step
        if (err <= config.adaptive_tol) {
            if (model.admissible && !model.admissible(half)) {
                traj.status = FlowStatus::domain_exit;
                return traj;
            }
            t += h;
            state = std::move(half);
            append(traj, model, t, state);
        }
        double factor = err > 0.0 ? safety * std::pow(config.adaptive_tol / err, 0.2) : grow_max;
        h *= std::clamp(factor, grow_min, grow_max);
    }
    return traj;
}

}  // namespace

Trajectory sample_exact(const PoissonModel& model, const Vec& point0,
                        const IntegratorConfig& config) {
    if (!model.exact_flow)
        throw std::logic_error("sample_exact: model has no exact flow");
    validate(model, point0, config);
    Trajectory traj = make_empty(model, Method::exact);
    append(traj, model, 0.0, point0);
    const long n = grid_steps(config.t_end, config.dt);
    for (long k = 1; k <= n; ++k) {
        double t = (k == n) ? config.t_end : k * config.dt;
        append(traj, model, t, model.exact_flow(point0, t));
    }
    return traj;
}

Trajectory integrate(const PoissonModel& model, const Vec& point0,
                     const IntegratorConfig& config, Method method) {
    validate(model, point0, config);
    switch (method) {
        case Method::exact: return sample_exact(model, point0, config);
        case Method::adaptive: return integrate_adaptive(model, point0, config);
        case Method::rk4: default: return integrate_fixed(model, point0, config);
    }
}

double jacobi_residual(const PoissonModel& model, const Vec& point, double fd_step) {
    if (!(fd_step > 0.0))
        throw std::invalid_argument("jacobi_residual: fd_step must be positive");
    const int n = model.dimension;
    // d_l pi_jk by central differences
    std::vector<SquareMatrix> dpi(n);
    for (int l = 0; l < n; ++l) {
        Vec up = point, dn = point;
        up[l] += fd_step;
        dn[l] -= fd_step;
        SquareMatrix pu = model.bracket_table(up), pd = model.bracket_table(dn);
        dpi[l] = SquareMatrix(n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                dpi[l](j, k) = (pu(j, k) - pd(j, k)) / (2.0 * fd_step);
    }
    SquareMatrix pi = model.bracket_table(point);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += pi(i, l) * dpi[l](j, k)
                       + pi(j, l) * dpi[l](k, i)
                       + pi(k, l) * dpi[l](i, j);
                worst = std::max(worst, std::abs(s));
            }
    return worst;
}

CompareReport compare_exact(const PoissonModel& model, const Vec& point0,
                            const IntegratorConfig& config, Method method) {
    if (!model.exact_flow)
        throw std::logic_error("compare_exact: model has no exact flow");
    Trajectory num = integrate(model, point0, config, method);
    CompareReport report;
    report.status = num.status;
    report.samples = num.size();
    report.monitor_names = num.monitor_names;
    report.monitor_drift.assign(num.monitor_names.size(), 0.0);
    std::vector<double> m0(num.monitor_names.size());
    for (size_t m = 0; m < m0.size(); ++m) m0[m] = num.monitor_values[m][0];
    for (size_t s = 0; s < num.size(); ++s) {
        Vec ref = model.exact_flow(point0, num.times[s]);
        report.max_deviation = std::max(report.max_deviation, state_distance(ref, num.states[s]));
        for (size_t m = 0; m < m0.size(); ++m)
            report.monitor_drift[m] =
                std::max(report.monitor_drift[m], std::abs(num.monitor_values[m][s] - m0[m]));
    }
    return report;
}

}  // namespace pfm::engine
