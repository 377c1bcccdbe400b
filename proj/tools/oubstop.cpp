// oubstop: optimal stopping boundary and value of an Ornstein-Uhlenbeck bridge.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using oubstop::cli::RunConfig;

void add_common_options(CLI::App& sub, RunConfig& cfg, std::string& method, std::string& mesh) {
    sub.add_option("--alpha", cfg.params.alpha, "Slope of the underlying OU process (nonzero)")->capture_default_str();
    sub.add_option("--gamma", cfg.params.gamma, "Volatility (> 0)")->capture_default_str();
    sub.add_option("--z", cfg.params.z, "Pinning value at the horizon")->capture_default_str();
    sub.add_option("--theta", cfg.params.theta, "Pulling level")->capture_default_str();
    sub.add_option("--horizon", cfg.params.horizon, "Horizon T (> 0)")->capture_default_str();
    sub.add_option("--n", cfg.solver.n, "Mesh intervals")->capture_default_str();
    sub.add_option("--eps", cfg.solver.eps, "Picard stopping tolerance")->capture_default_str();
    sub.add_option("--max-iter", cfg.solver.max_iter, "Picard iteration cap")->capture_default_str();
    sub.add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
    sub.add_option("--paths", cfg.paths, "Monte Carlo paths")->capture_default_str();
    sub.add_option("--out", cfg.out, "Output file (directory for figures); stdout when omitted");
    sub.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv"}))->capture_default_str();
    sub.add_option("--method", method, "Boundary solver")
        ->check(CLI::IsMember({"picard", "backward"}))
        ->capture_default_str();
    sub.add_option("--mesh", mesh, "Time mesh")->check(CLI::IsMember({"log", "uniform"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal stopping of an Ornstein-Uhlenbeck bridge"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string method = "picard";
    std::string mesh = "log";
    double t = 0.0;
    double x = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;

    auto* solve = app.add_subcommand("solve", "Solve the stopping boundary and write `t,beta` CSV");
    add_common_options(*solve, cfg, method, mesh);

    auto* value = app.add_subcommand("value", "Evaluate the value function V(t, x)");
    add_common_options(*value, cfg, method, mesh);
    auto* value_t = value->add_option("--t", t, "Time in [0, horizon)");
    auto* value_x = value->add_option("--x", x, "Position");
    value->add_option("--grid", cfg.grid, "Emit a K x K surface instead of a single point");
    auto* opt_x_min = value->add_option("--x-min", x_min, "Lower x of the surface");
    auto* opt_x_max = value->add_option("--x-max", x_max, "Upper x of the surface");

    auto* verify = app.add_subcommand("verify", "Monte Carlo and consistency checks of a boundary");
    add_common_options(*verify, cfg, method, mesh);
    auto* verify_t = verify->add_option("--t", t, "Start time (default 0)");
    auto* verify_x = verify->add_option("--x", x, "Start position (default z)");
    verify->add_option("--boundary", cfg.boundary_file, "Check this `t,beta` file instead of solving");

    auto* figures = app.add_subcommand("figures", "Write boundary datasets for the slope, volatility and mesh sweeps");
    add_common_options(*figures, cfg, method, mesh);

    CLI11_PARSE(app, argc, argv);

    cfg.method = method == "backward" ? oubstop::SolveMethod::backward : oubstop::SolveMethod::picard;
    cfg.solver.mesh = mesh == "uniform" ? oubstop::MeshKind::uniform : oubstop::MeshKind::logarithmic;
    if (value_t->count() > 0 || verify_t->count() > 0) cfg.t = t;
    if (value_x->count() > 0 || verify_x->count() > 0) cfg.x = x;
    if (opt_x_min->count() > 0) cfg.x_min = x_min;
    if (opt_x_max->count() > 0) cfg.x_max = x_max;

    try {
        if (solve->parsed()) return oubstop::cli::cmd_solve(cfg, std::cout, std::cerr);
        if (value->parsed()) return oubstop::cli::cmd_value(cfg, std::cout, std::cerr);
        if (verify->parsed()) return oubstop::cli::cmd_verify(cfg, std::cout, std::cerr);
        return oubstop::cli::cmd_figures(cfg, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(oubstop::cli::ExitCode::failure);
    }
}
