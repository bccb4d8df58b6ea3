#include "pfm/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pfm/bracket_engine.hpp"
#include "pfm/matrix_core.hpp"
#include "pfm/minkowski.hpp"
#include "pfm/plane.hpp"
#include "pfm/rng.hpp"
#include "pfm/sphere.hpp"

namespace pfm::driver {

namespace {

using core::Complex;
using core::Mat2C;
using core::SU2Element;
using core::Su2Vector;

std::string format_u64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

// traj.csv -> traj<suffix>; no extension: append
std::string sibling_path(const std::string& path, const std::string& suffix) {
    auto slash = path.find_last_of('/');
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// ---- trajectory assembly ---------------------------------------------

struct Frame {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string to_csv(const Frame& f) {
    std::string out;
    for (size_t c = 0; c < f.columns.size(); ++c) {
        if (c) out.push_back(',');
        out += f.columns[c];
    }
    out.push_back('\n');
    for (const auto& row : f.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out.push_back(',');
            out += format_double(row[c]);
        }
        out.push_back('\n');
    }
    return out;
}

std::string to_json_frame(const Frame& f, const std::string& model) {
    std::string out = "{\"model\":\"" + model + "\",\"columns\":[";
    for (size_t c = 0; c < f.columns.size(); ++c) {
        if (c) out.push_back(',');
        out += "\"" + f.columns[c] + "\"";
    }
    out += "],\"rows\":[";
    for (size_t r = 0; r < f.rows.size(); ++r) {
        if (r) out.push_back(',');
        out.push_back('[');
        for (size_t c = 0; c < f.rows[r].size(); ++c) {
            if (c) out.push_back(',');
            out += format_double(f.rows[r][c]);
        }
        out.push_back(']');
    }
    out += "]}\n";
    return out;
}

Frame frame_from_trajectory(const engine::Trajectory& traj,
                            const std::vector<std::string>& state_names) {
    Frame f;
    f.columns.push_back("t");
    f.columns.insert(f.columns.end(), state_names.begin(), state_names.end());
    f.columns.insert(f.columns.end(), traj.monitor_names.begin(), traj.monitor_names.end());
    for (size_t i = 0; i < traj.size(); ++i) {
        std::vector<double> row;
        row.push_back(traj.times[i]);
        row.insert(row.end(), traj.states[i].begin(), traj.states[i].end());
        for (size_t m = 0; m < traj.monitor_names.size(); ++m)
            row.push_back(traj.monitor_values[m][i]);
        f.rows.push_back(std::move(row));
    }
    return f;
}

double resolve_t_end(const RunSpec& spec, std::vector<std::string>& notes) {
    if (spec.t_end >= 0.0) return spec.t_end;
    if (spec.epsilon == 0.0) {
        notes.push_back("t-end auto with epsilon = 0: using t_end = 1");
        return 1.0;
    }
    double e = std::abs(spec.epsilon);
    if (spec.model == "plane") {
        double n2 = spec.eta0[0] * spec.eta0[0] + spec.eta0[1] * spec.eta0[1];
        if (n2 == 0.0) return 1.0;
        return 2.0 * M_PI / (e * n2);  // one circle period
    }
    if (spec.model == "sphere") {
        double aw = std::hypot(spec.w[0], spec.w[1]);
        if (aw == 0.0) return 1.0;
        return 2.0 * M_PI / (aw * std::sqrt(1.0 + e * e * aw * aw));  // one circle period
    }
    return 4.0 / (e * spec.mass * spec.mass);  // minkowski: a few e-folds of eta
}

engine::Trajectory run_engine(const engine::PoissonModel& model, const engine::Vec& state0,
                              const engine::IntegratorConfig& config, const std::string& method) {
    if (method == "exact") return engine::sample_exact(model, state0, config);
    if (method == "adaptive") return engine::integrate(model, state0, config, engine::Method::adaptive);
    return engine::integrate(model, state0, config, engine::Method::rk4);  // rk4 and both
}

struct Deviation {
    double max_state = 0.0;
    std::vector<double> monitor_drift;
};

Deviation deviation_against_exact(const engine::PoissonModel& model, const engine::Vec& state0,
                                  const engine::Trajectory& traj) {
    Deviation d;
    d.monitor_drift.assign(traj.monitor_names.size(), 0.0);
    for (size_t i = 0; i < traj.size(); ++i) {
        engine::Vec ref = model.exact_flow(state0, traj.times[i]);
        for (size_t k = 0; k < ref.size(); ++k)
            d.max_state = std::max(d.max_state, std::abs(ref[k] - traj.states[i][k]));
        for (size_t m = 0; m < traj.monitor_names.size(); ++m)
            d.monitor_drift[m] = std::max(
                d.monitor_drift[m], std::abs(traj.monitor_values[m][i] - traj.monitor_values[m][0]));
    }
    return d;
}

std::string comparison_json(const RunSpec& spec, const engine::Trajectory& traj,
                            const Deviation& dev, const std::vector<std::string>& extra) {
    std::string out = "{";
    out += "\"model\":\"" + spec.model + "\",";
    out += "\"method\":\"both\",";
    out += "\"epsilon\":" + format_double(spec.epsilon) + ",";
    out += "\"samples\":" + std::to_string(traj.size()) + ",";
    out += "\"max_deviation\":" + format_double(dev.max_state) + ",";
    out += "\"monitor_drift\":{";
    for (size_t m = 0; m < traj.monitor_names.size(); ++m) {
        if (m) out.push_back(',');
        out += "\"" + traj.monitor_names[m] + "\":" + format_double(dev.monitor_drift[m]);
    }
    out += "}";
    for (const auto& field : extra) out += "," + field;
    out += ",\"status\":\"";
    out += traj.status == engine::FlowStatus::ok ? "ok" : "domain_exit";
    out += "\"}\n";
    return out;
}

// ---- random sampling --------------------------------------------------

Mat2C random_sl2(Rng& rng) {
    for (;;) {
        Mat2C m{rng.complex_normal(), rng.complex_normal(),
                rng.complex_normal(), rng.complex_normal()};
        Complex d = m.det();
        if (std::abs(d) < 1e-3) continue;
        return m * (1.0 / std::sqrt(d));
    }
}

SU2Element random_su2(Rng& rng) {
    double q0, q1, q2, q3, n;
    do {
        q0 = rng.normal();
        q1 = rng.normal();
        q2 = rng.normal();
        q3 = rng.normal();
        n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    } while (n < 1e-6);
    q0 /= n, q1 /= n, q2 /= n, q3 /= n;
    return SU2Element(Mat2C{{q0, q1}, {q2, q3}, {-q2, q3}, {q0, -q1}});
}

core::BorelElement random_borel(Rng& rng) {
    return {std::exp(rng.uniform(-0.7, 0.7)), 0.7 * rng.complex_normal()};
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- simulate ----------------------------------------------------------

namespace {

using ExtraFields = std::function<std::vector<std::string>(const engine::Trajectory&)>;

RunOutcome simulate_bracket_model(const RunSpec& spec, const engine::PoissonModel& model,
                                  const engine::Vec& state0,
                                  const std::vector<std::string>& state_names,
                                  const ExtraFields& extra_fields,
                                  std::vector<std::string> notes) {
    RunOutcome outcome;
    outcome.notes = std::move(notes);
    engine::IntegratorConfig config;
    config.t_end = resolve_t_end(spec, outcome.notes);
    config.dt = spec.dt > 0.0 ? spec.dt : (config.t_end > 0.0 ? config.t_end / 2000.0 : 1.0);
    config.adaptive_tol = spec.adaptive_tol;

    engine::Trajectory traj = run_engine(model, state0, config, spec.method);
    Frame frame = frame_from_trajectory(traj, state_names);
    write_file(spec.out, spec.format == "json" ? to_json_frame(frame, spec.model) : to_csv(frame));
    outcome.files.push_back(spec.out);

    if (spec.method == "both") {
        Deviation dev = deviation_against_exact(model, state0, traj);
        std::string report_path = sibling_path(spec.out, ".report.json");
        std::vector<std::string> extra;
        if (extra_fields) extra = extra_fields(traj);
        write_file(report_path, comparison_json(spec, traj, dev, extra));
        outcome.files.push_back(report_path);
    }
    if (traj.status == engine::FlowStatus::domain_exit) {
        outcome.status = RunStatus::domain_exit;
        outcome.notes.push_back("flow left the admissible domain; trajectory truncated");
    }
    return outcome;
}

RunOutcome simulate_minkowski(const RunSpec& spec) {
    mink::Params params{spec.epsilon, spec.mass};
    mink::PhasePoint p0{spec.x0[0], spec.x0[1], spec.eta0[0], spec.eta0[1]};
    std::vector<std::string> notes;
    double mu2 = p0.etap * p0.etam;
    if (spec.epsilon == 0.0) {
        notes.push_back("classical limit (epsilon = 0): hyperbola check skipped");
    } else if (mu2 == 0.0) {
        notes.push_back("eta+ eta- = 0: hyperbola check skipped");
    }
    ExtraFields extra;
    if (spec.epsilon != 0.0 && mu2 != 0.0) {
        extra = [params, p0, mu2](const engine::Trajectory& traj) {
            auto c = mink::hyperbola_constants(p0, params);
            double target = -1.0 / (params.epsilon * params.epsilon * mu2);
            double residual = 0.0;
            for (const auto& state : traj.states)
                residual = std::max(residual,
                                    std::abs((state[0] - c.cp) * (state[1] - c.cm) - target));
            return std::vector<std::string>{"\"hyperbola_max_residual\":" +
                                            format_double(residual)};
        };
    }
    return simulate_bracket_model(spec, mink::make_model(params), mink::flatten(p0),
                                  {"xplus", "xminus", "etaplus", "etaminus"}, extra, notes);
}

RunOutcome simulate_sphere(const RunSpec& spec) {
    if (spec.epsilon == 0.0)
        throw std::invalid_argument("sphere runs require epsilon != 0");
    sphere::Params params{spec.epsilon};
    SU2Element g0 = core::su2_exp({spec.g0[0], spec.g0[1], spec.g0[2]});
    sphere::DualSphereElement b{spec.s, {spec.w[0], spec.w[1]}};
    Mat2C xi0 = g0.m * sphere::to_borel(b, params).matrix();

    RunOutcome outcome;
    engine::IntegratorConfig config;
    config.t_end = resolve_t_end(spec, outcome.notes);
    config.dt = spec.dt > 0.0 ? spec.dt : (config.t_end > 0.0 ? config.t_end / 2000.0 : 1.0);
    config.adaptive_tol = spec.adaptive_tol;

    engine::PoissonModel model = sphere::make_embedding_model(params);
    engine::Trajectory traj = run_engine(model, sphere::flatten(xi0), config, spec.method);

    Frame frame;
    frame.columns = {"t", "n1", "n2", "n3", "Htilde"};
    std::vector<sphere::SpherePoint> points;
    for (size_t i = 0; i < traj.size(); ++i) {
        Mat2C xi = sphere::unflatten(traj.states[i]);
        xi = xi * (1.0 / std::sqrt(xi.det()));
        sphere::SpherePoint n = sphere::hopf_project(core::factor_su2_borel(xi).k);
        points.push_back(n);
        frame.rows.push_back({traj.times[i], n.n1, n.n2, n.n3, traj.monitor_values[0][i]});
    }
    write_file(spec.out, spec.format == "json" ? to_json_frame(frame, spec.model) : to_csv(frame));
    outcome.files.push_back(spec.out);

    if (points.size() >= 8) {
        sphere::CircleReport measured = sphere::classify_projected_circle(points);
        std::string out = "{";
        out += "\"kind\":\"" + std::string(sphere::to_string(measured.kind)) + "\",";
        out += "\"axis\":[" + format_double(measured.axis[0]) + "," +
               format_double(measured.axis[1]) + "," + format_double(measured.axis[2]) + "],";
        out += "\"cos_polar\":" + format_double(measured.cos_polar) + ",";
        out += "\"fit_residual\":" + format_double(measured.fit_residual);
        if (sphere::constraint_check(b)) {
            sphere::CircleReport analytic = sphere::circle_geometry(b, params);
            Su2Vector axis_body{analytic.axis[0], analytic.axis[1], analytic.axis[2]};
            Su2Vector axis_space = core::adjoint_rotate(g0, axis_body);
            out += ",\"analytic\":{";
            out += "\"kind\":\"" + std::string(sphere::to_string(analytic.kind)) + "\",";
            out += "\"axis\":[" + format_double(axis_space.k1) + "," +
                   format_double(axis_space.k2) + "," + format_double(axis_space.k3) + "],";
            out += "\"cos_polar\":" + format_double(analytic.cos_polar) + ",";
            out += "\"angular_speed\":" + format_double(analytic.angular_speed) + "}";
        }
        out += "}\n";
        std::string circle_path = sibling_path(spec.out, ".circle.json");
        write_file(circle_path, out);
        outcome.files.push_back(circle_path);
    } else {
        outcome.notes.push_back("fewer than 8 samples: circle classification skipped");
    }

    if (spec.method == "both") {
        Deviation dev = deviation_against_exact(model, sphere::flatten(xi0), traj);
        std::string report_path = sibling_path(spec.out, ".report.json");
        write_file(report_path, comparison_json(spec, traj, dev, {}));
        outcome.files.push_back(report_path);
    }
    if (traj.status == engine::FlowStatus::domain_exit)
        outcome.status = RunStatus::domain_exit;
    return outcome;
}

}  // namespace

RunOutcome run_simulate(const RunSpec& spec) {
    if (spec.out.empty())
        throw std::invalid_argument("simulate: output path required");
    if (spec.method != "exact" && spec.method != "rk4" && spec.method != "adaptive" &&
        spec.method != "both")
        throw std::invalid_argument("simulate: unknown method " + spec.method);
    if (spec.format != "csv" && spec.format != "json")
        throw std::invalid_argument("simulate: unknown format " + spec.format);
    if (spec.model == "plane") {
        plane::Params params{spec.epsilon};
        plane::PhasePoint p0{{spec.x0[0], spec.x0[1]}, {spec.eta0[0], spec.eta0[1]}};
        std::vector<std::string> notes;
        if (spec.epsilon == 0.0)
            notes.push_back("classical limit (epsilon = 0): straight-line motion");
        return simulate_bracket_model(spec, plane::make_model(params), plane::flatten(p0),
                                      {"x1", "x2", "eta1", "eta2"}, ExtraFields{}, notes);
    }
    if (spec.model == "minkowski") return simulate_minkowski(spec);
    if (spec.model == "sphere") return simulate_sphere(spec);
    throw std::invalid_argument("simulate: unknown model " + spec.model);
}

// ---- check suites ------------------------------------------------------

namespace {

struct SuiteBuilder {
    CheckReport report;

    void add(const std::string& name, double residual, double tolerance) {
        report.cases.push_back({name, residual, tolerance, residual <= tolerance});
        report.max_residual = std::max(report.max_residual, residual);
    }

    CheckReport finish(double suite_tol) {
        report.tolerance = suite_tol;
        report.pass = report.max_residual <= suite_tol;
        for (const auto& c : report.cases) report.pass = report.pass && c.pass;
        return report;
    }
};

CheckReport check_factorization(int samples, std::uint64_t seed, double tol) {
    Rng rng(seed);
    SuiteBuilder suite;
    double r_kb = 0.0, r_bk = 0.0, r_lu = 0.0, r_ul = 0.0, unit = 0.0;
    for (int i = 0; i < samples; ++i) {
        Mat2C m = random_sl2(rng);
        auto kb = core::factor_su2_borel(m);
        r_kb = std::max(r_kb, (kb.k.m * kb.b.matrix() - m).norm_inf());
        unit = std::max(unit, core::unitarity_defect(kb.k.m));
        auto bk = core::factor_borel_su2(m);
        r_bk = std::max(r_bk, (bk.b.matrix() * bk.k.m - m).norm_inf());
        unit = std::max(unit, core::unitarity_defect(bk.k.m));
        if (std::abs(m.a) >= core::near_singular_min) {
            auto lu = core::factor_e2_borel(m);
            r_lu = std::max(r_lu, (lu.l.matrix() * lu.u.matrix() - m).norm_inf());
        }
        if (std::abs(m.d) >= core::near_singular_min) {
            auto ul = core::factor_borel_e2(m);
            r_ul = std::max(r_ul, (ul.u.matrix() * ul.l.matrix() - m).norm_inf());
        }
    }
    suite.add("su2*borel recomposition", r_kb, tol);
    suite.add("borel*su2 recomposition", r_bk, tol);
    suite.add("e2*borel recomposition", r_lu, tol);
    suite.add("borel*e2 recomposition", r_ul, tol);
    suite.add("su2 factor unitarity defect", unit, tol);

    // boundary of the decomposable set must raise, not degrade
    double misses = 0.0;
    Mat2C off{0.0, 1.0, -1.0, 0.0};
    try {
        core::factor_e2_borel(off);
        misses += 1.0;
    } catch (const std::domain_error&) {
    }
    try {
        core::factor_borel_e2(off);
        misses += 1.0;
    } catch (const std::domain_error&) {
    }
    suite.add("boundary errors raised (shortfall)", misses, 0.0);

    // matrix-route oracle for the plane right projection
    double r_route = 0.0;
    for (int i = 0; i < samples; ++i) {
        double eps = rng.uniform(0.05, 1.0);
        Complex x = rng.complex_normal();
        Complex eta = rng.complex_normal();
        Complex d = 1.0 + Complex{0.0, 1.0} * eps * x * std::conj(eta);
        if (std::abs(d) < core::near_singular_min) continue;
        Mat2C m{1.0, Complex{0.0, 1.0} * eps * std::conj(eta), x, d};
        auto ul = core::factor_borel_e2(m);
        Complex expected = x / (1.0 - Complex{0.0, 1.0} * eps * std::conj(x) * eta);
        r_route = std::max(r_route, std::abs(ul.l.config_coordinate() - expected));
    }
    suite.add("matrix route reproduces right projection", r_route, tol);

    return suite.finish(tol);
}

CheckReport check_jacobi(int samples, std::uint64_t seed, double tol) {
    Rng rng(seed);
    SuiteBuilder suite;
    const double fd_step = 1e-5;
    double r_plane = 0.0, r_mink = 0.0;
    for (int i = 0; i < samples; ++i) {
        double eps = rng.uniform(0.1, 1.0);
        engine::Vec z{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                      rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        r_plane = std::max(r_plane,
                           engine::jacobi_residual(plane::make_model({eps}), z, fd_step));
        r_mink = std::max(r_mink,
                          engine::jacobi_residual(mink::make_model({eps, 1.0}), z, fd_step));
    }
    suite.add("plane bracket table", r_plane, tol);
    suite.add("minkowski bracket table", r_mink, tol);

    // negative control: one flipped sign must blow the residual past 1e-2
    engine::PoissonModel corrupted = plane::make_model({1.0});
    corrupted.bracket_table = [](const engine::Vec& v) {
        engine::SquareMatrix pi = plane::phase_brackets(plane::unflatten(v), {1.0});
        pi(2, 3) = -pi(2, 3);
        pi(3, 2) = -pi(3, 2);
        return pi;
    };
    double control = 0.0;
    for (int i = 0; i < samples; ++i) {
        engine::Vec z{rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5),
                      rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5)};
        control = std::max(control, engine::jacobi_residual(corrupted, z, fd_step));
    }
    suite.add("corrupted-table detection shortfall", std::max(0.0, 1e-2 - control), 0.0);

    return suite.finish(tol);
}

CheckReport check_casimir(int samples, std::uint64_t seed, double tol) {
    Rng rng(seed);
    SuiteBuilder suite;
    double r_plane = 0.0, r_mink = 0.0;
    int accepted = 0;
    while (accepted < samples) {
        double eps = rng.uniform(0.05, 1.0);
        plane::PhasePoint p{0.7 * rng.complex_normal(), 0.7 * rng.complex_normal()};
        if (std::abs(plane::domain_factor(p, {eps})) < 0.05) continue;
        ++accepted;
        auto j = plane::moment(p, {eps});
        r_plane = std::max(r_plane, std::abs(std::abs(j.P) - std::abs(p.eta)));
    }
    accepted = 0;
    while (accepted < samples) {
        mink::Params params{rng.uniform(0.05, 1.0), 1.0};
        mink::PhasePoint p{0.7 * rng.normal(), 0.7 * rng.normal(),
                           0.7 * rng.normal(), 0.7 * rng.normal()};
        auto [a, b] = mink::domain_factors(p, params);
        if (a < 0.05 || b < 0.05) continue;
        ++accepted;
        auto j = mink::moment(p, params);
        r_mink = std::max(r_mink, std::abs(j.Pp * j.Pm - p.etap * p.etam));
    }
    suite.add("plane |P| = |eta|", r_plane, tol);
    suite.add("minkowski P+P- = eta+eta-", r_mink, tol);
    return suite.finish(tol);
}

CheckReport check_groupoid(int samples, std::uint64_t seed, double tol) {
    Rng rng(seed);
    SuiteBuilder suite;

    double r_unit = 0.0;
    for (int i = 0; i < samples; ++i) {
        double eps = rng.uniform(0.05, 1.0);
        plane::PhasePoint p{rng.complex_normal(), 0.0};
        auto [l, r] = plane::projections(p, {eps});
        r_unit = std::max(r_unit, std::abs(l - r));
        mink::PhasePoint q{rng.normal(), rng.normal(), 0.0, 0.0};
        auto lm = mink::left_projection(q);
        auto rm = mink::right_projection(q, {eps, 1.0});
        r_unit = std::max(r_unit, std::max(std::abs(lm[0] - rm[0]), std::abs(lm[1] - rm[1])));
    }
    suite.add("unit fibre: projections coincide at eta = 0", r_unit, tol);

    double r_plane = 0.0;
    for (int i = 0; i < samples; ++i) {
        double eps = rng.uniform(0.05, 1.0);
        plane::CotangentPoint c{0.8 * rng.complex_normal(), 0.8 * rng.complex_normal()};
        auto [ql, qr] = plane::qp_projections(c, {eps});
        plane::PhasePoint p = plane::to_phase(c, {eps});
        if (!plane::admissible(p, {eps})) continue;
        auto [xl, xr] = plane::projections(p, {eps});
        r_plane = std::max(r_plane, std::max(std::abs(ql - xl), std::abs(qr - xr)));
    }
    suite.add("plane chart consistency", r_plane, tol);

    double r_mink = 0.0;
    for (int i = 0; i < samples; ++i) {
        double eps = rng.uniform(0.05, 1.0);
        mink::CotangentPoint c{0.8 * rng.normal(), 0.8 * rng.normal(),
                               0.8 * rng.normal(), 0.8 * rng.normal()};
        auto qp = mink::qp_projections(c, {eps, 1.0});
        mink::PhasePoint p = mink::to_phase(c, {eps, 1.0});
        auto xl = mink::left_projection(p);
        auto xr = mink::right_projection(p, {eps, 1.0});
        r_mink = std::max(r_mink, std::abs(qp.left[0] - xl[0]));
        r_mink = std::max(r_mink, std::abs(qp.left[1] - xl[1]));
        r_mink = std::max(r_mink, std::abs(qp.right[0] - xr[0]));
        r_mink = std::max(r_mink, std::abs(qp.right[1] - xr[1]));
    }
    suite.add("minkowski chart consistency", r_mink, tol);

    double r_cocycle = 0.0;
    for (int i = 0; i < samples; ++i) {
        SU2Element g1 = random_su2(rng), g2 = random_su2(rng);
        core::BorelElement b = random_borel(rng);
        auto whole = core::dressing(SU2Element(g1.m * g2.m), b);
        auto inner = core::dressing(g2, b);
        auto outer = core::dressing(g1, inner.dressed);
        r_cocycle = std::max(r_cocycle,
                             (whole.dressed.matrix() - outer.dressed.matrix()).norm_inf());
        r_cocycle = std::max(r_cocycle,
                             (whole.remainder.m - outer.remainder.m * inner.remainder.m).norm_inf());
    }
    suite.add("su2 dressing cocycle", r_cocycle, tol);

    return suite.finish(tol);
}

CheckReport check_circle_geometry(int samples, std::uint64_t seed, double tol) {
    Rng rng(seed);
    SuiteBuilder suite;
    double kind_mismatch = 0.0, r_cos = 0.0, r_axis = 0.0, r_fit = 0.0, great_count = 0.0;
    for (int i = 0; i < samples; ++i) {
        sphere::Params params{rng.uniform(0.05, 1.5)};
        double aw = rng.uniform(0.1, 3.0), ph = rng.uniform(0.0, 2.0 * M_PI);
        sphere::DualSphereElement b{0.0, std::polar(aw, ph)};
        SU2Element g0 = random_su2(rng);
        sphere::CircleReport analytic = sphere::circle_geometry(b, params);

        double period = 2.0 * M_PI / analytic.angular_speed;
        std::vector<sphere::SpherePoint> points;
        for (int k = 0; k < 64; ++k)
            points.push_back(sphere::hopf_project(
                sphere::phase_trajectory({g0, b}, params, period * k / 64.0).g));
        sphere::CircleReport measured = sphere::classify_projected_circle(points);

        if (measured.kind != analytic.kind) kind_mismatch += 1.0;
        if (measured.kind == sphere::CircleKind::great_circle) great_count += 1.0;
        r_cos = std::max(r_cos, std::abs(measured.cos_polar - analytic.cos_polar));
        Su2Vector axis_space = core::adjoint_rotate(
            g0, {analytic.axis[0], analytic.axis[1], analytic.axis[2]});
        double align = std::abs(measured.axis[0] * axis_space.k1 +
                                measured.axis[1] * axis_space.k2 +
                                measured.axis[2] * axis_space.k3);
        r_axis = std::max(r_axis, 1.0 - align);
        r_fit = std::max(r_fit, measured.fit_residual);
    }
    suite.add("kind agreement shortfall", kind_mismatch, 0.0);
    suite.add("great circles reported", great_count, 0.0);
    suite.add("cos_polar residual", r_cos, tol);
    suite.add("axis alignment residual", r_axis, tol);
    suite.add("plane-fit residual", r_fit, tol);

    // w = 0 projects to a point
    std::vector<sphere::SpherePoint> still(16, sphere::hopf_project(random_su2(rng)));
    bool is_point = sphere::classify_projected_circle(still).kind == sphere::CircleKind::point;
    suite.add("rest classified as point (shortfall)", is_point ? 0.0 : 1.0, 0.0);

    // classical big circles densely cover every polar angle
    std::array<int, 20> bins{};
    for (int i = 0; i < 2000; ++i) {
        SU2Element g0 = random_su2(rng);
        Su2Vector x{rng.normal(), rng.normal(), rng.normal()};
        double n = core::su2_norm(x);
        if (n < 0.05) {
            --i;
            continue;
        }
        double period = M_PI / n;  // adjoint rotation by 2|X|t closes at t = pi/|X|
        std::vector<sphere::SpherePoint> pts;
        for (int k = 0; k < 64; ++k)
            pts.push_back(sphere::hopf_project(sphere::big_circle(g0, x, period * k / 64.0)));
        double c = sphere::classify_projected_circle(pts).cos_polar;
        int bin = std::min(19, static_cast<int>(std::floor(c * 20.0)));
        bins[bin] += 1;
    }
    double empty = 0.0;
    for (int count : bins)
        if (count == 0) empty += 1.0;
    suite.add("lemma coverage: empty cos_polar bins", empty, 0.0);

    return suite.finish(tol);
}

CheckReport check_identities(int samples, std::uint64_t seed, double tol) {
    Rng rng(seed);
    SuiteBuilder suite;
    double r_ham = 0.0;
    int accepted = 0;
    while (accepted < samples) {
        double eps = rng.uniform(0.05, 1.0);
        plane::PhasePoint p{rng.complex_normal(), rng.complex_normal()};
        if (std::abs(p.x) < 0.1) continue;
        if (std::abs(plane::domain_factor(p, {eps})) < 0.05) continue;
        ++accepted;
        auto [xl, xr] = plane::projections(p, {eps});
        r_ham = std::max(r_ham, std::abs(plane::hamiltonian_identity(xl, xr, {eps}) -
                                         plane::hamiltonian(p.eta)));
    }
    suite.add("plane hamiltonian identity", r_ham, tol);

    double r_gm_plane = 0.0, r_gm_mink = 0.0;
    for (int i = 0; i < samples; ++i) {
        double eps = rng.uniform(0.05, 1.0);
        plane::CotangentPoint c{rng.complex_normal(), rng.complex_normal()};
        auto [l, r] = plane::qp_projections(c, {eps});
        r_gm_plane = std::max(r_gm_plane, std::abs(l * r - c.q * c.q));
        mink::CotangentPoint mc{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        auto qp = mink::qp_projections(mc, {eps, 1.0});
        r_gm_mink = std::max(r_gm_mink, std::abs(qp.left[0] * qp.right[0] - mc.qp * mc.qp));
        r_gm_mink = std::max(r_gm_mink, std::abs(qp.left[1] * qp.right[1] - mc.qm * mc.qm));
    }
    suite.add("plane geometric mean", r_gm_plane, 1e-12);
    suite.add("minkowski geometric mean", r_gm_mink, 1e-12);

    return suite.finish(tol);
}

}  // namespace

CheckReport run_check(const std::string& suite, int samples, std::uint64_t seed,
                      double tolerance) {
    struct SuiteSpec {
        const char* name;
        int default_samples;
        double default_tol;
        CheckReport (*run)(int, std::uint64_t, double);
    };
    static const SuiteSpec suites[] = {
        {"factorization", 1000, 1e-12, check_factorization},
        {"jacobi", 100, 1e-6, check_jacobi},
        {"casimir", 1000, 1e-13, check_casimir},
        {"groupoid", 500, 1e-10, check_groupoid},
        {"circle-geometry", 100, 1e-8, check_circle_geometry},
        {"identities", 1000, 1e-10, check_identities},
    };
    for (const auto& s : suites) {
        if (suite == s.name) {
            int n = samples > 0 ? samples : s.default_samples;
            double tol = tolerance > 0.0 ? tolerance : s.default_tol;
            CheckReport report = s.run(n, seed, tol);
            report.suite = suite;
            report.seed = seed;
            report.samples = n;
            return report;
        }
    }
    throw std::invalid_argument("unknown check suite: " + suite);
}

std::string to_json(const CheckReport& report) {
    std::string out = "{";
    out += "\"suite\":\"" + json_escape(report.suite) + "\",";
    out += "\"seed\":" + format_u64(report.seed) + ",";
    out += "\"samples\":" + std::to_string(report.samples) + ",";
    out += "\"tolerance\":" + format_double(report.tolerance) + ",";
    out += "\"max_residual\":" + format_double(report.max_residual) + ",";
    out += std::string("\"pass\":") + (report.pass ? "true" : "false") + ",";
    out += "\"cases\":[";
    for (size_t i = 0; i < report.cases.size(); ++i) {
        const auto& c = report.cases[i];
        if (i) out.push_back(',');
        out += "{\"name\":\"" + json_escape(c.name) + "\",";
        out += "\"residual\":" + format_double(c.residual) + ",";
        out += "\"tolerance\":" + format_double(c.tolerance) + ",";
        out += std::string("\"pass\":") + (c.pass ? "true" : "false") + "}";
    }
    out += "]}\n";
    return out;
}

// ---- plotting ----------------------------------------------------------

Table read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open: " + path);
    Table table;
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
    if (table.columns.empty())
        throw std::invalid_argument("no columns in: " + path);
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw std::invalid_argument(path + ": bad number at line " +
                                            std::to_string(lineno));
            row.push_back(v);
        }
        if (row.size() != table.columns.size())
            throw std::invalid_argument(path + ": wrong column count at line " +
                                        std::to_string(lineno));
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

int column_index(const Table& t, const std::string& name) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::string format_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void render_plot(const std::string& csv_path, const std::string& svg_path) {
    Table t = read_csv(csv_path);
    int cx = -1, cy = -1;
    bool is_sphere = false;
    if ((cx = column_index(t, "x1")) >= 0 && (cy = column_index(t, "x2")) >= 0) {
    } else if ((cx = column_index(t, "xplus")) >= 0 && (cy = column_index(t, "xminus")) >= 0) {
    } else if ((cx = column_index(t, "n1")) >= 0 && (cy = column_index(t, "n2")) >= 0) {
        is_sphere = true;  // orthographic projection onto the (n1, n2) plane
    } else {
        throw std::invalid_argument(csv_path + ": unrecognized trajectory schema");
    }

    double min_x = -1.0, max_x = 1.0, min_y = -1.0, max_y = 1.0;
    if (is_sphere) {
        min_x = min_y = -1.15;
        max_x = max_y = 1.15;
    } else if (!t.rows.empty()) {
        min_x = max_x = t.rows[0][cx];
        min_y = max_y = t.rows[0][cy];
        for (const auto& row : t.rows) {
            min_x = std::min(min_x, row[cx]);
            max_x = std::max(max_x, row[cx]);
            min_y = std::min(min_y, row[cy]);
            max_y = std::max(max_y, row[cy]);
        }
        double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
        double pad = 0.05 * span;
        double half = 0.5 * span + pad;
        double mid_x = 0.5 * (min_x + max_x), mid_y = 0.5 * (min_y + max_y);
        min_x = mid_x - half;
        max_x = mid_x + half;
        min_y = mid_y - half;
        max_y = mid_y + half;
    }

    const double size = 640.0, margin = 40.0, inner = size - 2.0 * margin;
    auto px = [&](double x) { return margin + (x - min_x) / (max_x - min_x) * inner; };
    auto py = [&](double y) { return size - margin - (y - min_y) / (max_y - min_y) * inner; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";
    if (min_x < 0.0 && max_x > 0.0)
        svg += "<line x1=\"" + format_px(px(0.0)) + "\" y1=\"" + format_px(py(min_y)) +
               "\" x2=\"" + format_px(px(0.0)) + "\" y2=\"" + format_px(py(max_y)) +
               "\" stroke=\"#cccccc\"/>\n";
    if (min_y < 0.0 && max_y > 0.0)
        svg += "<line x1=\"" + format_px(px(min_x)) + "\" y1=\"" + format_px(py(0.0)) +
               "\" x2=\"" + format_px(px(max_x)) + "\" y2=\"" + format_px(py(0.0)) +
               "\" stroke=\"#cccccc\"/>\n";
    if (is_sphere)
        svg += "<circle cx=\"" + format_px(px(0.0)) + "\" cy=\"" + format_px(py(0.0)) +
               "\" r=\"" + format_px(inner / (max_x - min_x)) +
               "\" fill=\"none\" stroke=\"#888888\"/>\n";
    if (!t.rows.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        for (size_t i = 0; i < t.rows.size(); ++i) {
            if (i) svg.push_back(' ');
            svg += format_px(px(t.rows[i][cx])) + "," + format_px(py(t.rows[i][cy]));
        }
        svg += "\"/>\n";
    }
    svg += "</svg>\n";
    write_file(svg_path, svg);
}

}  // namespace pfm::driver
