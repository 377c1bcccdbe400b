#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "oubstop/boundary_csv.hpp"
#include "oubstop/mc_oracle.hpp"
#include "oubstop/pricing.hpp"

namespace oubstop::cli {

namespace {

constexpr double kBridgeConstant = 0.8399;

void write_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    body(file);
    if (!file) throw std::runtime_error("failed writing " + path);
}

void write_boundary(const GeneralBoundary& gb, std::ostream& os) {
    write_boundary_csv(os, {gb.times(), gb.values()});
}

std::string label(const std::string& name, double v) {
    std::ostringstream os;
    os << name << '=' << v;
    return os.str();
}

std::string file_tag(const std::string& name, double v) {
    std::ostringstream os;
    os << name << v;
    return os.str();
}

// Columns share the time column of the first solution.
void write_table(std::ostream& os, const std::vector<double>& t, const std::vector<std::string>& names,
                 const std::vector<std::vector<double>>& columns) {
    os << 't';
    for (const auto& n : names) os << ',' << n;
    os << '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << format_real(t[i]);
        for (const auto& c : columns) os << ',' << format_real(c[i]);
        os << '\n';
    }
}

struct Check {
    std::string name;
    double statistic;
    double threshold;
    bool pass;
};

}  // namespace

void RunConfig::validate() const {
    params.validate();
    solver.validate();
    if (paths < 1) throw std::invalid_argument("--paths must be >= 1");
    if (format != "csv") throw std::invalid_argument("--format: only csv is supported");
    if (t && !(*t >= 0.0 && *t < params.horizon)) throw std::invalid_argument("--t must lie in [0, horizon)");
    if (x && !std::isfinite(*x)) throw std::invalid_argument("--x must be finite");
    if (grid == 1) throw std::invalid_argument("--grid must be 0 or >= 2");
    if (x_min && x_max && !(*x_min < *x_max)) throw std::invalid_argument("--x-min must be below --x-max");
}

GeneralBoundary load_boundary(const OUBParams& params, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open boundary file " + path);
    const BoundaryTable table = read_boundary_csv(in);
    if (table.t.size() < 3) throw std::runtime_error("boundary file needs at least 3 nodes");

    CanonicalReduction red(params);
    BoundarySolution sol;
    for (std::size_t i = 0; i < table.t.size(); ++i) {
        sol.grid.nodes.push_back(red.to_canonical_time(table.t[i]));
        sol.beta.push_back(red.to_canonical_space(table.beta[i]));
    }
    if (sol.grid.nodes.front() != 0.0) throw std::runtime_error("boundary file must start at t = 0");
    if (std::abs(sol.grid.nodes.back() - 1.0) > 1e-12) throw std::runtime_error("boundary file must end at the horizon");
    sol.grid.nodes.back() = 1.0;
    if (!std::is_sorted(sol.grid.nodes.begin(), sol.grid.nodes.end()) ||
        std::adjacent_find(sol.grid.nodes.begin(), sol.grid.nodes.end()) != sol.grid.nodes.end()) {
        throw std::runtime_error("boundary file times must be strictly increasing");
    }
    return {std::move(red), std::move(sol)};
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.validate();
    try {
        const GeneralBoundary gb = solve_boundary(cfg.params, cfg.solver, cfg.method);
        write_output(cfg.out, out, [&](std::ostream& os) { write_boundary(gb, os); });
        err << "method=" << to_string(cfg.method) << " iterations=" << gb.canonical.iterations
            << " residual=" << gb.canonical.final_residual << '\n';
        return static_cast<int>(ExitCode::ok);
    } catch (const NonConvergenceError& e) {
        const GeneralBoundary partial{CanonicalReduction(cfg.params), e.last_iterate()};
        const std::string path = (cfg.out.empty() ? std::string("oubstop_boundary.csv") : cfg.out) + ".partial";
        write_output(path, out, [&](std::ostream& os) { write_boundary(partial, os); });
        err << e.what() << "\npartial boundary written to " << path << '\n';
        return static_cast<int>(ExitCode::not_converged);
    }
}

int cmd_value(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.validate();
    if (cfg.grid == 0 && (!cfg.t || !cfg.x)) {
        err << "value: --t and --x are required unless --grid is given\n";
        return static_cast<int>(ExitCode::failure);
    }
    const auto& p = cfg.params;
    const GeneralBoundary gb = solve_boundary(p, cfg.solver, cfg.method);

    std::vector<std::pair<double, double>> points;
    if (cfg.grid > 0) {
        const double spread = 2.0 * p.gamma * std::sqrt(p.horizon);
        const double lo = cfg.x_min.value_or(std::min(p.z, p.theta) - spread);
        const double hi = cfg.x_max.value_or(std::max(p.z, p.theta) + spread);
        for (std::size_t i = 0; i < cfg.grid; ++i) {
            const double t = p.horizon * static_cast<double>(i) / static_cast<double>(cfg.grid);
            for (std::size_t j = 0; j < cfg.grid; ++j) {
                points.emplace_back(t, lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(cfg.grid - 1));
            }
        }
    } else {
        points.emplace_back(*cfg.t, *cfg.x);
    }

    write_output(cfg.out, out, [&](std::ostream& os) {
        os << "t,x,V\n";
        for (const auto& [t, x] : points) {
            os << format_real(t) << ',' << format_real(x) << ',' << format_real(value(gb, t, x)) << '\n';
        }
    });
    return static_cast<int>(ExitCode::ok);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.validate();
    const auto& p = cfg.params;
    GeneralBoundary gb = cfg.boundary_file.empty() ? solve_boundary(p, cfg.solver, cfg.method)
                                                   : load_boundary(p, cfg.boundary_file);
    const auto& red = gb.reduction;
    const OUBParams& canonical = red.canonical();
    const BoundarySolution& sol = gb.canonical;

    const double t0 = red.to_canonical_time(cfg.t.value_or(0.0));
    const double x0 = red.to_canonical_space(cfg.x.value_or(p.z));
    const double delta = 0.25 * p.gamma;

    std::vector<Check> checks;

    const double pin = std::abs(sol.beta.back() - canonical.z);
    checks.push_back({"terminal_pinning", pin, 0.0, pin == 0.0});

    double matching = 0.0;
    const auto& nodes = sol.grid.nodes;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (nodes[i] > 0.95) break;
        const double v = value(canonical, sol, {nodes[i], sol.beta[i], false});
        matching = std::max(matching, std::abs(v - sol.beta[i]));
    }
    checks.push_back({"value_matching", matching, 5e-3, matching < 5e-3});

    MCConfig mc;
    mc.paths = cfg.paths;
    mc.seed = cfg.seed;
    mc.workers = cfg.solver.workers;
    const double v0 = value(canonical, sol, {t0, x0, true});
    const auto runs = perturbation_test(canonical, sol, {0.0, -delta, delta}, t0, x0, mc);
    const MCEstimate& base = runs[0].estimate;
    const double mc_z = base.std_error > 0.0 ? std::abs(base.mean - v0) / base.std_error
                                             : (base.mean == v0 ? 0.0 : INFINITY);
    checks.push_back({"mc_consistency", mc_z, 3.0, mc_z <= 3.0});

    for (std::size_t r = 1; r < runs.size(); ++r) {
        const auto& run = runs[r];
        const double z = run.diff_std_error > 0.0 ? run.diff_mean / run.diff_std_error
                                                  : (run.diff_mean > 0.0 ? INFINITY : 0.0);
        checks.push_back({r == 1 ? "perturbation_minus" : "perturbation_plus", z, 3.0, z <= 3.0});
    }

    bool all = true;
    write_output(cfg.out, out, [&](std::ostream& os) {
        os << "check,statistic,threshold,result\n";
        for (const auto& c : checks) {
            os << c.name << ',' << format_real(c.statistic) << ',' << format_real(c.threshold) << ','
               << (c.pass ? "pass" : "fail") << '\n';
            all = all && c.pass;
        }
    });
    if (!all) err << "verify: one or more checks failed\n";
    return static_cast<int>(all ? ExitCode::ok : ExitCode::failure);
}

int cmd_figures(const RunConfig& cfg, std::ostream& err) {
    cfg.validate();
    namespace fs = std::filesystem;
    const fs::path dir = cfg.out.empty() ? fs::path("figures") : fs::path(cfg.out);
    fs::create_directories(dir);

    const auto solve = [&](double alpha, double gamma, double z, std::size_t n) {
        SolverConfig sc = cfg.solver;
        sc.n = n;
        return solve_boundary({alpha, gamma, z, 0.0, 1.0}, sc, cfg.method);
    };
    const std::vector<double> pins{0.0, -5.0, 5.0};

    // Slope sweep; the +-alpha pairs should coincide.
    const std::vector<double> alphas{-5.0, -1.0, -0.01, 0.01, 1.0, 5.0};
    for (double z : pins) {
        std::vector<std::string> names;
        std::vector<std::vector<double>> cols;
        std::vector<double> t;
        for (double a : alphas) {
            const GeneralBoundary gb = solve(a, 1.0, z, cfg.solver.n);
            t = gb.times();
            names.push_back(label("alpha", a));
            cols.push_back(gb.values());
        }
        std::vector<double> bb;
        for (double ti : t) bb.push_back(z + kBridgeConstant * std::sqrt(1.0 - ti));
        names.emplace_back("bb_reference");
        cols.push_back(std::move(bb));
        write_output((dir / ("fig1_" + file_tag("z", z) + ".csv")).string(), err,
                     [&](std::ostream& os) { write_table(os, t, names, cols); });
    }

    // Volatility sweep at alpha = 1.
    const std::vector<double> gammas{0.5, 1.0, 2.0};
    for (double z : pins) {
        std::vector<std::string> names;
        std::vector<std::vector<double>> cols;
        std::vector<double> t;
        for (double g : gammas) {
            const GeneralBoundary gb = solve(1.0, g, z, cfg.solver.n);
            t = gb.times();
            names.push_back(label("gamma", g));
            cols.push_back(gb.values());
        }
        write_output((dir / ("fig2_" + file_tag("z", z) + ".csv")).string(), err,
                     [&](std::ostream& os) { write_table(os, t, names, cols); });
    }

    // Mesh refinement at alpha = gamma = 1, shown as beta(t) - z.
    for (std::size_t n : {std::size_t{10}, std::size_t{100}, std::size_t{500}}) {
        std::vector<std::string> names;
        std::vector<std::vector<double>> cols;
        std::vector<double> t;
        for (double z : {-5.0, 0.0, 5.0}) {
            const GeneralBoundary gb = solve(1.0, 1.0, z, n);
            t = gb.times();
            std::vector<double> shifted = gb.values();
            for (double& b : shifted) b -= z;
            names.push_back(label("z", z));
            cols.push_back(std::move(shifted));
        }
        write_output((dir / ("fig3_N" + std::to_string(n) + ".csv")).string(), err,
                     [&](std::ostream& os) { write_table(os, t, names, cols); });
    }

    write_output((dir / "MANIFEST.txt").string(), err, [&](std::ostream& os) {
        os << "Reconstructed boundary datasets for parameter sweeps.\n"
              "fig1_z<z>.csv   gamma=1, alpha in {-5,-1,-0.01,0.01,1,5}, plus z + 0.8399 sqrt(1-t)\n"
              "fig2_z<z>.csv   alpha=1, gamma in {0.5,1,2}\n"
              "fig3_N<N>.csv   alpha=gamma=1, columns beta(t) - z for z in {-5,0,5}\n";
    });
    err << "figures written to " << dir.string() << '\n';
    return static_cast<int>(ExitCode::ok);
}

}  // namespace oubstop::cli
