// Back end of the command-line front end: resolves run specifications,
// writes trajectory CSV/JSON files, renders SVG plots, and runs the
// seeded invariant check suites with machine-readable JSON reports.
//
// Every writer is deterministic: identical specs (seed included) produce
// byte-identical files. Numbers are serialized with 17 significant digits.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pfm::driver {

struct RunSpec {
    std::string model;               // minkowski | plane | sphere
    double epsilon = 0.1;
    double mass = 1.0;               // minkowski only
    std::array<double, 2> x0{0.0, 0.0};    // plane: Re,Im; minkowski: x+, x-
    std::array<double, 2> eta0{1.0, 0.0};  // plane: Re,Im; minkowski: eta+, eta-
    std::array<double, 2> w{1.0, 0.0};     // sphere momentum, Re,Im
    double s = 0.0;                        // sphere dual coordinate
    std::array<double, 3> g0{0.0, 0.0, 0.0};  // sphere attitude, exponential coords
    double t_end = -1.0;             // < 0: one natural period of the model
    double dt = 0.0;                 // <= 0: t_end / 2000
    double adaptive_tol = 1e-10;
    std::string method = "exact";    // exact | rk4 | adaptive | both
    std::uint64_t seed = 0;
    std::string out;                 // trajectory path
    std::string format = "csv";      // csv | json
};

enum class RunStatus { ok = 0, domain_exit = 3 };

struct RunOutcome {
    RunStatus status = RunStatus::ok;
    std::vector<std::string> files;
    std::vector<std::string> notes;
};

RunOutcome run_simulate(const RunSpec& spec);

struct CheckCase {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CheckReport {
    std::string suite;
    std::uint64_t seed = 0;
    int samples = 0;
    double tolerance = 0.0;
    double max_residual = 0.0;
    bool pass = false;
    std::vector<CheckCase> cases;
};

// suite in {factorization, jacobi, casimir, groupoid, circle-geometry,
// identities}; samples <= 0 or tolerance <= 0 pick the suite defaults
CheckReport run_check(const std::string& suite, int samples, std::uint64_t seed,
                      double tolerance);

std::string to_json(const CheckReport& report);

// CSV trajectory -> SVG polyline (sphere files in orthographic projection
// with the unit-circle outline)
void render_plot(const std::string& csv_path, const std::string& svg_path);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
Table read_csv(const std::string& path);

// %.17g, shared by all writers
std::string format_double(double v);

}  // namespace pfm::driver
