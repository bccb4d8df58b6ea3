// Generic Poisson-bracket dynamics over flat real coordinates.
//
// A model supplies a bracket table pi(z) with entries pi_ij = {z_i, z_j}
// and a Hamiltonian with analytic gradient; the flow convention is
//   zdot_i = {H, z_i} = sum_j pi_ji dH/dz_j,
// the sign being fixed so the plane and Minkowski tables reproduce their
// papers' equations of motion. Models with no bracket table in scope may
// instead provide the vector field directly.
//
// The integrator is fourth-order Runge-Kutta (Kutta's 3/8 tableau), fixed
// step or step-doubling adaptive. It is the independent oracle against
// every closed-form flow, so it is deliberately plain: no structure
// preservation, no cleverness.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pfm::engine {

using Vec = std::vector<double>;

// dense row-major square matrix, just big enough for bracket tables
struct SquareMatrix {
    int n = 0;
    std::vector<double> a;

    SquareMatrix() = default;
    explicit SquareMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    double antisymmetry_defect() const;
};

struct Monitor {
    std::string name;
    std::function<double(const Vec&)> eval;
};

struct PoissonModel {
    int dimension = 0;
    std::function<SquareMatrix(const Vec&)> bracket_table;       // pi(z)
    std::function<double(const Vec&)> hamiltonian;
    std::function<Vec(const Vec&)> hamiltonian_gradient;
    std::function<Vec(const Vec&)> vector_field;                 // optional override
    std::function<Vec(const Vec&, double)> exact_flow;           // optional
    std::function<bool(const Vec&)> admissible;                  // optional
    std::vector<Monitor> monitors;
};

enum class Method { rk4, adaptive, exact };

enum class FlowStatus { ok, domain_exit, max_steps_exceeded };

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    double adaptive_tol = 1e-10;
    long max_steps = 2'000'000;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<std::string> monitor_names;
    std::vector<std::vector<double>> monitor_values;  // one series per monitor
    Method method = Method::rk4;
    FlowStatus status = FlowStatus::ok;

    size_t size() const { return times.size(); }
};

// zdot_i = sum_j pi_ji dH/dz_j (or the model's vector_field when set)
Vec hamiltonian_rhs(const PoissonModel& model, const Vec& point);

// single RK4 step of the model's flow
Vec rk4_step(const PoissonModel& model, const Vec& point, double dt);

Trajectory integrate(const PoissonModel& model, const Vec& point0,
                     const IntegratorConfig& config, Method method);

// sample the model's exact flow on the uniform grid of config.dt
Trajectory sample_exact(const PoissonModel& model, const Vec& point0,
                        const IntegratorConfig& config);

// max over triples (i,j,k) of |sum_cyc sum_l pi_il d_l pi_jk|,
// derivatives by central differences of step fd_step
double jacobi_residual(const PoissonModel& model, const Vec& point, double fd_step);

struct CompareReport {
    double max_deviation = 0.0;              // inf-norm over shared grid
    std::vector<std::string> monitor_names;
    std::vector<double> monitor_drift;       // max |m(z(t)) - m(z0)| along the numeric flow
    FlowStatus status = FlowStatus::ok;
    size_t samples = 0;
};

CompareReport compare_exact(const PoissonModel& model, const Vec& point0,
                            const IntegratorConfig& config, Method method = Method::rk4);

}  // namespace pfm::engine
