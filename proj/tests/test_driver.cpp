#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "pfm/driver.hpp"

using namespace pfm;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_path(const std::string& name) {
    return std::string("driver_test_") + name;
}

// pull a number out of a flat JSON report
double json_number(const std::string& json, const std::string& key) {
    auto pos = json.find("\"" + key + "\":");
    REQUIRE(pos != std::string::npos);
    return std::strtod(json.c_str() + pos + key.size() + 3, nullptr);
}

}  // namespace

TEST_CASE("plane simulate with method=both: schema, deviation report, determinism") {
    driver::RunSpec spec;
    spec.model = "plane";
    spec.epsilon = 0.1;
    spec.x0 = {0.0, 0.0};
    spec.eta0 = {1.0, 0.0};
    spec.method = "both";
    spec.out = tmp_path("plane.csv");
    driver::RunOutcome outcome = driver::run_simulate(spec);
    CHECK(outcome.status == driver::RunStatus::ok);
    REQUIRE(outcome.files.size() == 2);

    driver::Table table = driver::read_csv(spec.out);
    REQUIRE(table.columns.size() == 7);
    CHECK(table.columns[0] == "t");
    CHECK(table.columns[1] == "x1");
    CHECK(table.columns[2] == "x2");
    CHECK(table.columns[3] == "eta1");
    CHECK(table.columns[4] == "eta2");
    CHECK(table.columns[5] == "H");
    CHECK(table.columns[6] == "absP");
    CHECK(table.rows.size() == 2001);  // one period at period/2000

    std::string report = slurp(outcome.files[1]);
    CHECK(json_number(report, "max_deviation") <= 1e-8);
    CHECK(json_number(report, "max_deviation") >= 0.0);

    // byte-identical rerun
    driver::RunSpec again = spec;
    again.out = tmp_path("plane_again.csv");
    driver::run_simulate(again);
    CHECK(slurp(spec.out) == slurp(again.out));
}

TEST_CASE("csv round-trips through the plot parser bit-exactly") {
    driver::RunSpec spec;
    spec.model = "plane";
    spec.epsilon = 0.3;
    spec.eta0 = {0.8, 0.4};
    spec.method = "exact";
    spec.dt = 0.05;
    spec.t_end = 1.0;
    spec.out = tmp_path("roundtrip.csv");
    driver::run_simulate(spec);

    driver::Table table = driver::read_csv(spec.out);
    std::string rewritten;
    for (size_t c = 0; c < table.columns.size(); ++c)
        rewritten += (c ? "," : "") + table.columns[c];
    rewritten += "\n";
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c)
            rewritten += (c ? "," : "") + driver::format_double(row[c]);
        rewritten += "\n";
    }
    CHECK(rewritten == slurp(spec.out));
}

TEST_CASE("minkowski simulate: classical-limit note at epsilon 0, hyperbola field otherwise") {
    driver::RunSpec spec;
    spec.model = "minkowski";
    spec.epsilon = 0.0;
    spec.x0 = {0.0, 0.0};
    spec.eta0 = {1.0, 1.0};
    spec.t_end = 1.0;
    spec.out = tmp_path("mink_classical.csv");
    driver::RunOutcome outcome = driver::run_simulate(spec);
    bool found = false;
    for (const auto& note : outcome.notes)
        if (note.find("classical limit") != std::string::npos) found = true;
    CHECK(found);
    driver::Table table = driver::read_csv(spec.out);
    // straight line: xplus = eta- * t
    const auto& last = table.rows.back();
    CHECK(std::abs(last[1] - last[0] * 1.0) <= 1e-12);

    driver::RunSpec deformed = spec;
    deformed.epsilon = 0.1;
    deformed.method = "both";
    deformed.t_end = 5.0;
    deformed.out = tmp_path("mink_deformed.csv");
    driver::RunOutcome outcome2 = driver::run_simulate(deformed);
    std::string report = slurp(outcome2.files[1]);
    CHECK(json_number(report, "hyperbola_max_residual") <= 1e-8);
    CHECK(json_number(report, "max_deviation") <= 1e-8);
}

TEST_CASE("sphere simulate writes the circle report of the spec example") {
    driver::RunSpec spec;
    spec.model = "sphere";
    spec.epsilon = 0.5;
    spec.w = {2.0, 0.0};
    spec.s = 0.0;
    spec.method = "exact";
    spec.out = tmp_path("sphere.csv");
    driver::RunOutcome outcome = driver::run_simulate(spec);
    REQUIRE(outcome.files.size() == 2);

    driver::Table table = driver::read_csv(spec.out);
    REQUIRE(table.columns.size() == 5);
    CHECK(table.columns[4] == "Htilde");
    for (const auto& row : table.rows) {
        CHECK(std::abs(row[1] * row[1] + row[2] * row[2] + row[3] * row[3] - 1.0) <= 1e-10);
        CHECK(std::abs(row[4] - 2.0) <= 1e-10);  // Htilde = |w|^2/2 = 2
    }

    std::string circle = slurp(outcome.files[1]);
    CHECK(circle.find("\"kind\":\"small_circle\"") != std::string::npos);
    CHECK(std::abs(json_number(circle, "cos_polar") - 1.0 / std::sqrt(2.0)) <= 1e-8);

    CHECK_THROWS_AS(
        [] {
            driver::RunSpec bad;
            bad.model = "sphere";
            bad.epsilon = 0.0;
            bad.out = "never_written.csv";
            driver::run_simulate(bad);
        }(),
        std::invalid_argument);
}

TEST_CASE("json trajectory format") {
    driver::RunSpec spec;
    spec.model = "plane";
    spec.epsilon = 0.2;
    spec.method = "exact";
    spec.t_end = 0.5;
    spec.dt = 0.1;
    spec.format = "json";
    spec.out = tmp_path("traj.json");
    driver::run_simulate(spec);
    std::string body = slurp(spec.out);
    CHECK(body.find("\"model\":\"plane\"") != std::string::npos);
    CHECK(body.find("\"columns\":[\"t\",\"x1\"") != std::string::npos);
}

TEST_CASE("invalid specs are rejected as usage errors") {
    driver::RunSpec spec;
    spec.model = "torus";
    spec.out = "x.csv";
    CHECK_THROWS_AS(driver::run_simulate(spec), std::invalid_argument);
    spec.model = "plane";
    spec.method = "symplectic";
    CHECK_THROWS_AS(driver::run_simulate(spec), std::invalid_argument);
    spec.method = "exact";
    spec.out = "";
    CHECK_THROWS_AS(driver::run_simulate(spec), std::invalid_argument);
    CHECK_THROWS_AS(driver::run_check("nonsense", 10, 1, 0.0), std::invalid_argument);
}

TEST_CASE("inadmissible initial data is refused before any output") {
    driver::RunSpec spec;
    spec.model = "minkowski";
    spec.epsilon = 1.0;
    spec.x0 = {2.0, 0.0};
    spec.eta0 = {1.0, 0.0};  // 1 - eps eta+ x+ = -1
    spec.t_end = 1.0;
    spec.out = tmp_path("never.csv");
    CHECK_THROWS_AS(driver::run_simulate(spec), std::domain_error);
}

TEST_CASE("check suites pass at reduced sample counts and report their shape") {
    for (const char* suite : {"factorization", "jacobi", "casimir", "groupoid", "identities"}) {
        driver::CheckReport report = driver::run_check(suite, 50, 7, 0.0);
        CHECK(report.pass);
        CHECK(report.suite == suite);
        CHECK(report.samples == 50);
        CHECK(!report.cases.empty());
        for (const auto& c : report.cases) CHECK(c.pass);
        std::string json = driver::to_json(report);
        CHECK(json.find("\"suite\":\"" + std::string(suite) + "\"") != std::string::npos);
        CHECK(json.find("\"pass\":true") != std::string::npos);
        CHECK(json_number(json, "seed") == 7.0);
    }
    driver::CheckReport circles = driver::run_check("circle-geometry", 20, 7, 0.0);
    CHECK(circles.pass);
}

TEST_CASE("check reports are deterministic for a fixed seed") {
    std::string a = driver::to_json(driver::run_check("casimir", 100, 123, 0.0));
    std::string b = driver::to_json(driver::run_check("casimir", 100, 123, 0.0));
    CHECK(a == b);
    std::string c = driver::to_json(driver::run_check("casimir", 100, 124, 0.0));
    CHECK(a != c);
}

TEST_CASE("plot: polyline for plane runs, unit circle for sphere, empty file ok") {
    driver::RunSpec spec;
    spec.model = "plane";
    spec.epsilon = 0.1;
    spec.method = "exact";
    spec.out = tmp_path("plot_src.csv");
    driver::run_simulate(spec);
    std::string svg_path = tmp_path("plot.svg");
    driver::render_plot(spec.out, svg_path);
    std::string svg = slurp(svg_path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);

    driver::RunSpec sph;
    sph.model = "sphere";
    sph.epsilon = 0.5;
    sph.out = tmp_path("plot_sphere.csv");
    driver::run_simulate(sph);
    driver::render_plot(sph.out, tmp_path("plot_sphere.svg"));
    std::string sphere_svg = slurp(tmp_path("plot_sphere.svg"));
    CHECK(sphere_svg.find("<circle") != std::string::npos);

    // header-only trajectory: axes, no polyline, no failure
    std::ofstream empty(tmp_path("empty.csv"), std::ios::binary);
    empty << "t,x1,x2,eta1,eta2,H,absP\n";
    empty.close();
    driver::render_plot(tmp_path("empty.csv"), tmp_path("empty.svg"));
    std::string empty_svg = slurp(tmp_path("empty.svg"));
    CHECK(empty_svg.find("<polyline") == std::string::npos);
    CHECK(empty_svg.find("<line") != std::string::npos);

    // malformed input
    std::ofstream bad(tmp_path("bad.csv"), std::ios::binary);
    bad << "t,x1,x2\n1,2\n";
    bad.close();
    CHECK_THROWS_AS(driver::render_plot(tmp_path("bad.csv"), tmp_path("bad.svg")),
                    std::invalid_argument);
    CHECK_THROWS_AS(driver::render_plot("no_such_file.csv", tmp_path("nope.svg")),
                    std::invalid_argument);

    // unknown schema
    std::ofstream odd(tmp_path("odd.csv"), std::ios::binary);
    odd << "a,b\n1,2\n";
    odd.close();
    CHECK_THROWS_AS(driver::render_plot(tmp_path("odd.csv"), tmp_path("odd.svg")),
                    std::invalid_argument);
}

TEST_CASE("adaptive method produces a nonuniform admissible trajectory") {
    driver::RunSpec spec;
    spec.model = "plane";
    spec.epsilon = 0.2;
    spec.eta0 = {1.0, 0.5};
    spec.method = "adaptive";
    spec.t_end = 3.0;
    spec.dt = 0.1;
    spec.adaptive_tol = 1e-9;
    spec.out = tmp_path("adaptive.csv");
    driver::RunOutcome outcome = driver::run_simulate(spec);
    CHECK(outcome.status == driver::RunStatus::ok);
    driver::Table table = driver::read_csv(spec.out);
    REQUIRE(table.rows.size() >= 3);
    for (size_t i = 1; i < table.rows.size(); ++i)
        CHECK(table.rows[i][0] > table.rows[i - 1][0]);
    CHECK(table.rows.back()[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("minkowski trajectories plot through the light-cone schema") {
    driver::RunSpec spec;
    spec.model = "minkowski";
    spec.epsilon = 0.1;
    spec.eta0 = {1.0, 1.0};
    spec.x0 = {0.3, -0.2};
    spec.t_end = 5.0;
    spec.out = tmp_path("mink_plot.csv");
    driver::run_simulate(spec);
    driver::render_plot(spec.out, tmp_path("mink_plot.svg"));
    CHECK(slurp(tmp_path("mink_plot.svg")).find("<polyline") != std::string::npos);
}

TEST_CASE("t-end auto picks one period for the plane") {
    driver::RunSpec spec;
    spec.model = "plane";
    spec.epsilon = 0.1;
    spec.eta0 = {1.0, 0.0};
    spec.method = "exact";
    spec.out = tmp_path("auto.csv");
    driver::run_simulate(spec);
    driver::Table table = driver::read_csv(spec.out);
    double t_last = table.rows.back()[0];
    CHECK(t_last == doctest::Approx(2.0 * M_PI / 0.1).epsilon(1e-12));
    // the circle closes: last row position equals the first
    CHECK(std::abs(table.rows.back()[1] - table.rows.front()[1]) <= 1e-9);
    CHECK(std::abs(table.rows.back()[2] - table.rows.front()[2]) <= 1e-9);
}
