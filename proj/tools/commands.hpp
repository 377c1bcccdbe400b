#pragma once

// Subcommand implementations behind the oubstop executable. Each returns the
// process exit code: 0 success, 1 invalid input or failed check, 2 solver
// non-convergence.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "oubstop/ou_bridge.hpp"
#include "oubstop/solver.hpp"

namespace oubstop::cli {

enum class ExitCode : int { ok = 0, failure = 1, not_converged = 2 };

struct RunConfig {
    OUBParams params;
    SolverConfig solver;
    SolveMethod method = SolveMethod::picard;
    std::uint64_t seed = 20240611;
    std::size_t paths = 100000;
    std::string out;              ///< file (solve, value, verify) or directory (figures); empty: stdout
    std::string format = "csv";
    std::optional<double> t;      ///< value / verify start time
    std::optional<double> x;      ///< value / verify start position
    std::size_t grid = 0;         ///< value: K x K surface when > 0
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::string boundary_file;    ///< verify: check this boundary instead of solving

    /// Throws std::invalid_argument before any computation.
    void validate() const;
};

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_value(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_figures(const RunConfig& cfg, std::ostream& err);

/// Loads a `t,beta` file written by cmd_solve for the given parameters.
GeneralBoundary load_boundary(const OUBParams& params, const std::string& path);

}  // namespace oubstop::cli
