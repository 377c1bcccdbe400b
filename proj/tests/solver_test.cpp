#include "oubstop/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

namespace oubstop {
namespace {

// log(1 + 250 (e - 1) / 500), from tests/oracles/derived_values.py.
constexpr double kLogMeshMidNode = 0.62011450695827752;
// Optimal stopping level of a Brownian bridge pinned at 0: 0.8399 sqrt(1 - t).
constexpr double kBrownianBridgeConstant = 0.839923675692373;

const BoundarySolution& unit_solution() {
    static const BoundarySolution sol = picard_solve({1.0, 1.0, 0.0}, {});
    return sol;
}

TEST(LogPartition, NodesAndEndpoints) {
    const auto g = log_partition(500);
    ASSERT_EQ(g.nodes.size(), 501u);
    EXPECT_EQ(g.intervals(), 500u);
    EXPECT_EQ(g.nodes.front(), 0.0);
    EXPECT_EQ(g.nodes.back(), 1.0);
    EXPECT_NEAR(g.nodes[250], kLogMeshMidNode, 1e-16);
    for (std::size_t i = 1; i < g.nodes.size(); ++i) EXPECT_LT(g.nodes[i - 1], g.nodes[i]);
    // Spacing shrinks toward the horizon.
    EXPECT_GT(g.nodes[1] - g.nodes[0], g.nodes[500] - g.nodes[499]);
    EXPECT_THROW(log_partition(1), std::invalid_argument);
}

TEST(UniformPartition, Nodes) {
    const auto g = make_grid(4, MeshKind::uniform);
    ASSERT_EQ(g.nodes.size(), 5u);
    EXPECT_EQ(g.nodes[2], 0.5);
    EXPECT_EQ(g.nodes.back(), 1.0);
}

TEST(SolverConfig, Validation) {
    EXPECT_NO_THROW(SolverConfig{}.validate());
    EXPECT_THROW((SolverConfig{1}).validate(), std::invalid_argument);
    EXPECT_THROW((SolverConfig{10, 0.0}).validate(), std::invalid_argument);
    EXPECT_THROW((SolverConfig{10, 1e-4, 0}).validate(), std::invalid_argument);
    EXPECT_THROW(picard_solve({1.0, 1.0, 0.0, 1.0, 1.0}, {}), std::invalid_argument);
    EXPECT_THROW(backward_solve({1.0, 1.0, 0.0, 0.0, 2.0}, {}), std::invalid_argument);
}

TEST(Picard, ConvergesAndPinsTerminalValue) {
    const auto& sol = unit_solution();
    EXPECT_EQ(sol.method, SolveMethod::picard);
    ASSERT_EQ(sol.beta.size(), 501u);
    EXPECT_EQ(sol.beta.back(), 0.0);
    EXPECT_LT(sol.final_residual, 1e-4);
    EXPECT_EQ(sol.residuals.size(), sol.iterations);
    EXPECT_EQ(sol.residuals.back(), sol.final_residual);
    EXPECT_GT(sol.iterations, 1u);
    EXPECT_LT(sol.iterations, 100u);
}

TEST(Picard, BoundaryAboveDriftRoot) {
    // Stopping is only optimal where the drift is non-positive: beta >= z / cosh(alpha (1 - t)).
    for (double alpha : {-3.0, 1.0}) {
        for (double z : {-2.0, 0.0, 2.0}) {
            const auto sol = picard_solve({alpha, 1.0, z}, {100});
            for (std::size_t i = 0; i + 2 < sol.beta.size(); ++i) {
                const double t = sol.grid.nodes[i];
                EXPECT_GT(sol.beta[i], z / std::cosh(alpha * (1.0 - t))) << "alpha " << alpha << " z " << z;
            }
        }
    }
}

TEST(Picard, EvenInAlpha) {
    const auto plus = picard_solve({2.0, 0.7, 1.0}, {200});
    const auto minus = picard_solve({-2.0, 0.7, 1.0}, {200});
    ASSERT_EQ(plus.beta.size(), minus.beta.size());
    for (std::size_t i = 0; i < plus.beta.size(); ++i) EXPECT_NEAR(plus.beta[i], minus.beta[i], 1e-12);
}

TEST(Picard, SmallAlphaApproachesBrownianBridge) {
    const auto sol = picard_solve({1e-4, 1.0, 0.0}, {});
    // Near the horizon the dropped last addend pulls the discrete boundary to z.
    for (std::size_t i = 0; i < sol.beta.size(); ++i) {
        const double t = sol.grid.nodes[i];
        if (t > 0.95) break;
        EXPECT_NEAR(sol.beta[i], kBrownianBridgeConstant * std::sqrt(1.0 - t), 0.02) << "node " << i;
    }
}

TEST(Picard, WorkerCountDoesNotChangeResult) {
    SolverConfig one{150};
    one.workers = 1;
    SolverConfig three{150};
    three.workers = 3;
    const auto a = picard_solve({1.5, 0.8, -0.5}, one);
    const auto b = picard_solve({1.5, 0.8, -0.5}, three);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(a.beta, b.beta);
}

TEST(Picard, NonConvergenceCarriesLastIterate) {
    SolverConfig cfg{100};
    cfg.max_iter = 2;
    try {
        picard_solve({1.0, 1.0, 0.0}, cfg);
        FAIL() << "expected NonConvergenceError";
    } catch (const NonConvergenceError& e) {
        EXPECT_EQ(e.last_iterate().iterations, 2u);
        EXPECT_EQ(e.last_iterate().residuals.size(), 2u);
        EXPECT_EQ(e.last_iterate().beta.size(), 101u);
        EXPECT_GE(e.last_iterate().final_residual, 1e-4);
    }
}

TEST(Backward, AgreesWithPicard) {
    const OUBParams p{1.0, 1.0, 0.5};
    const auto a = picard_solve(p, {100});
    const auto b = backward_solve(p, {100});
    EXPECT_EQ(b.method, SolveMethod::backward);
    EXPECT_EQ(b.beta.back(), 0.5);
    for (std::size_t i = 0; i < a.beta.size(); ++i) EXPECT_NEAR(a.beta[i], b.beta[i], 1e-3) << "node " << i;
}

TEST(BoundaryEval, InterpolatesLinearly) {
    const auto& sol = unit_solution();
    const auto& t = sol.grid.nodes;
    for (std::size_t i : {0u, 10u, 250u, 499u}) EXPECT_EQ(boundary_eval(sol, t[i]), sol.beta[i]);
    EXPECT_EQ(boundary_eval(sol, 1.0), 0.0);
    const double mid = 0.5 * (t[100] + t[101]);
    EXPECT_NEAR(boundary_eval(sol, mid), 0.5 * (sol.beta[100] + sol.beta[101]), 1e-15);
    EXPECT_THROW(boundary_eval(sol, -1e-9), std::domain_error);
    EXPECT_THROW(boundary_eval(sol, 1.0 + 1e-9), std::domain_error);
}

TEST(GeneralBoundary, PullingLevelShiftsBoundary) {
    const double theta = 2.5;
    const auto shifted = solve_boundary({1.0, 1.0, 0.7 + theta, theta, 1.0}, {200});
    const auto base = picard_solve({1.0, 1.0, 0.7}, {200});
    const auto values = shifted.values();
    for (std::size_t i = 0; i < values.size(); ++i) EXPECT_NEAR(values[i], base.beta[i] + theta, 1e-9);
    EXPECT_EQ(shifted(1.0), 0.7 + theta);
}

TEST(GeneralBoundary, HorizonRescalesTime) {
    const double horizon = 3.0;
    const auto general = solve_boundary({0.5, 1.0, 0.2, 0.0, horizon}, {200});
    const auto base = picard_solve({0.5 * horizon, std::sqrt(horizon), 0.2}, {200});
    const auto times = general.times();
    const auto values = general.values();
    ASSERT_EQ(times.size(), base.grid.nodes.size());
    EXPECT_EQ(times.back(), horizon);
    for (std::size_t i = 0; i < times.size(); ++i) {
        EXPECT_NEAR(times[i], horizon * base.grid.nodes[i], 1e-12);
        EXPECT_NEAR(values[i], base.beta[i], 1e-9);
    }
    EXPECT_NEAR(general(1.5), boundary_eval(base, 0.5), 1e-9);
}

TEST(GeneralBoundary, VolatilityScalesBoundaryAtZeroPin) {
    const auto unit = picard_solve({1.0, 1.0, 0.0}, {200});
    for (double gamma : {0.5, 2.0}) {
        const auto scaled = picard_solve({1.0, gamma, 0.0}, {200});
        for (std::size_t i = 0; i < unit.beta.size(); ++i) {
            EXPECT_NEAR(scaled.beta[i], gamma * unit.beta[i], 2e-3 * gamma) << "node " << i;
        }
    }
}

TEST(SolveMethod, Names) {
    EXPECT_STREQ(to_string(SolveMethod::picard), "picard");
    EXPECT_STREQ(to_string(SolveMethod::backward), "backward");
}

}  // namespace
}  // namespace oubstop
