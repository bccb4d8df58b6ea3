// Command-line front end: simulate | check | plot.
//
// Exit codes: 0 success, 1 failed check suite, 2 usage or input error,
// 3 simulation left the admissible domain (partial output written).

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "pfm/driver.hpp"

namespace {

std::array<double, 2> parse_pair(const std::string& text, const std::string& flag) {
    double a, b;
    char trailing;
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &a, &b, &trailing) != 2)
        throw std::invalid_argument(flag + ": expected two comma-separated numbers");
    return {a, b};
}

std::array<double, 3> parse_triple(const std::string& text, const std::string& flag) {
    double a, b, c;
    char trailing;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &a, &b, &c, &trailing) != 3)
        throw std::invalid_argument(flag + ": expected three comma-separated numbers");
    return {a, b, c};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free motion on the Poisson plane, sphere and 2D Minkowski space"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "integrate one trajectory and export it");
    pfm::driver::RunSpec spec;
    std::string x0_text = "0,0", eta0_text = "1,0", w_text = "1,0", g0_text = "0,0,0";
    std::string t_end_text = "auto";
    sim->add_option("--model", spec.model, "minkowski | plane | sphere")
        ->required()
        ->check(CLI::IsMember({"minkowski", "plane", "sphere"}));
    sim->add_option("--epsilon", spec.epsilon, "deformation parameter");
    sim->add_option("--mass", spec.mass, "mass (minkowski)");
    sim->add_option("--x0", x0_text, "initial position re,im (plane) or x+,x- (minkowski)");
    sim->add_option("--eta0", eta0_text, "initial momentum re,im (plane) or eta+,eta- (minkowski)");
    sim->add_option("--w", w_text, "sphere momentum re,im");
    sim->add_option("--s", spec.s, "sphere dual coordinate s");
    sim->add_option("--g0", g0_text, "sphere initial attitude, exponential coordinates k1,k2,k3");
    sim->add_option("--t-end", t_end_text, "end time, or 'auto' for one natural period");
    sim->add_option("--dt", spec.dt, "time step (default t_end/2000)");
    sim->add_option("--adaptive-tol", spec.adaptive_tol, "local error bound for --method adaptive");
    sim->add_option("--method", spec.method, "exact | rk4 | adaptive | both")
        ->check(CLI::IsMember({"exact", "rk4", "adaptive", "both"}));
    sim->add_option("--seed", spec.seed, "seed recorded with the run");
    sim->add_option("--out", spec.out, "trajectory output path")->required();
    sim->add_option("--format", spec.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    // check
    auto* chk = app.add_subcommand("check", "run a seeded invariant suite");
    std::string suite;
    int samples = 0;
    std::uint64_t check_seed = 42;
    double tol = 0.0;
    std::string check_out;
    chk->add_option("--suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember({"factorization", "jacobi", "casimir", "groupoid",
                               "circle-geometry", "identities"}));
    chk->add_option("--samples", samples, "sample count (0 = suite default)");
    chk->add_option("--seed", check_seed, "RNG seed");
    chk->add_option("--tol", tol, "suite tolerance (0 = suite default)");
    chk->add_option("--out", check_out, "report path (default stdout)");

    // plot
    auto* plt = app.add_subcommand("plot", "render a trajectory CSV as SVG");
    std::string plot_in, plot_out;
    plt->add_option("--in", plot_in, "trajectory CSV")->required();
    plt->add_option("--out", plot_out, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            spec.x0 = parse_pair(x0_text, "--x0");
            spec.eta0 = parse_pair(eta0_text, "--eta0");
            spec.w = parse_pair(w_text, "--w");
            spec.g0 = parse_triple(g0_text, "--g0");
            spec.t_end = t_end_text == "auto" ? -1.0 : std::stod(t_end_text);
            auto outcome = pfm::driver::run_simulate(spec);
            for (const auto& note : outcome.notes)
                std::cerr << "note: " << note << "\n";
            if (outcome.status == pfm::driver::RunStatus::domain_exit) {
                std::cerr << "warning: domain exit, output truncated\n";
                return 3;
            }
            return 0;
        }
        if (chk->parsed()) {
            auto report = pfm::driver::run_check(suite, samples, check_seed, tol);
            std::string json = pfm::driver::to_json(report);
            if (check_out.empty()) {
                std::cout << json;
            } else {
                std::ofstream out(check_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + check_out);
                out << json;
            }
            return report.pass ? 0 : 1;
        }
        if (plt->parsed()) {
            pfm::driver::render_plot(plot_in, plot_out);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
