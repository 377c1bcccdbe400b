#include "oubstop/ou_bridge.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace oubstop {
namespace {

// Reference values from tests/oracles/derived_values.py (mpmath, 50 digits).
constexpr double kDriftAlpha1AtX1 = -1.3130352854993313;
constexpr double kCondMeanReference = 0.88681888397007391;
constexpr double kCondStdReference = 0.48068552987374696;

OUBParams unit_bridge(double alpha = 1.0, double gamma = 1.0, double z = 0.0) { return {alpha, gamma, z, 0.0, 1.0}; }

TEST(OUBParams, RejectsInvalidFields) {
    EXPECT_THROW((OUBParams{0.0, 1.0, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((OUBParams{1.0, 0.0, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((OUBParams{1.0, -1.0, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((OUBParams{1.0, 1.0, 0.0, 0.0, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((OUBParams{1.0, 1.0, NAN}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((OUBParams{-3.0, 0.2, 4.0, 1.0, 2.5}.validate()));
}

TEST(Drift, VanishesAtZeroWhenPinnedAtZero) {
    for (double t : {0.0, 0.25, 0.5, 0.9, 0.999}) EXPECT_EQ(drift(unit_bridge(), t, 0.0), 0.0);
}

TEST(Drift, MatchesHighPrecisionReference) {
    EXPECT_NEAR(drift(unit_bridge(), 0.0, 1.0), kDriftAlpha1AtX1, 1e-14);
}

TEST(Drift, DomainErrorAtHorizon) {
    EXPECT_THROW(drift(unit_bridge(), 1.0, 0.0), std::domain_error);
    EXPECT_THROW(drift(unit_bridge(), -0.1, 0.0), std::domain_error);
    EXPECT_THROW(drift({1.0, 1.0, 0.0, 0.0, 2.0}, 2.0, 0.0), std::domain_error);
}

TEST(Drift, GeneralHorizonAndLevelMatchDirectFormula) {
    const OUBParams p{0.7, 1.3, 2.0, -1.5, 3.0};
    for (double t : {0.0, 1.0, 2.5}) {
        for (double x : {-2.0, 0.5, 4.0}) {
            const double tau = p.alpha * (p.horizon - t);
            const double expected = p.alpha * ((p.z - p.theta) - std::cosh(tau) * (x - p.theta)) / std::sinh(tau);
            EXPECT_NEAR(drift(p, t, x), expected, 1e-12 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST(AlphaParity, DriftMeanAndStdAreEvenInAlpha) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double alpha = 0.05 + 4.0 * unit(gen);
        const double gamma = 0.1 + 2.0 * unit(gen);
        const double z = -5.0 + 10.0 * unit(gen);
        const double t1 = 0.99 * unit(gen);
        const double t2 = t1 + (1.0 - t1) * unit(gen);
        const double x = -6.0 + 12.0 * unit(gen);
        const auto plus = unit_bridge(alpha, gamma, z);
        const auto minus = unit_bridge(-alpha, gamma, z);
        const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
        EXPECT_TRUE(close(drift(plus, t1, x), drift(minus, t1, x)));
        EXPECT_TRUE(close(cond_mean(plus, t1, x, t2), cond_mean(minus, t1, x, t2)));
        EXPECT_TRUE(close(cond_std(plus, t1, t2), cond_std(minus, t1, t2)));
    }
}

TEST(CondMean, CollapsesAtEqualTimesAndPinsAtHorizon) {
    const auto p = unit_bridge(1.5, 0.8, -2.0);
    EXPECT_EQ(cond_mean(p, 0.3, 1.7, 0.3), 1.7);
    EXPECT_EQ(cond_mean(p, 0.3, 1.7, 1.0), -2.0);
    const OUBParams general{1.5, 0.8, -2.0, 0.75, 4.0};
    EXPECT_EQ(cond_mean(general, 1.0, 3.0, 4.0), -2.0);
}

TEST(CondMean, MatchesHighPrecisionReference) {
    EXPECT_NEAR(cond_mean(unit_bridge(1.0, 1.0, 2.0), 0.0, 0.0, 0.5), kCondMeanReference, 1e-15);
}

TEST(CondStd, ZeroAtEqualTimesAndAtHorizon) {
    const auto p = unit_bridge(-2.0, 1.4, 1.0);
    EXPECT_EQ(cond_std(p, 0.4, 0.4), 0.0);
    EXPECT_EQ(cond_std(p, 0.4, 1.0), 0.0);
}

TEST(CondStd, MatchesHighPrecisionReference) {
    EXPECT_NEAR(cond_std(unit_bridge(), 0.0, 0.5), kCondStdReference, 1e-15);
}

TEST(CondStd, NonNegativeNearHorizonForBothSigns) {
    for (double alpha : {-8.0, -1e-4, 1e-4, 8.0}) {
        for (double t2 : {1.0 - 1e-6, 1.0 - 1e-10, 1.0 - 1e-14}) {
            const double v = cond_std(unit_bridge(alpha), 0.2, t2);
            EXPECT_GE(v, 0.0);
            EXPECT_TRUE(std::isfinite(v));
        }
    }
}

TEST(TransitionLaw, AgreesWithConditionalMoments) {
    const OUBParams p{1.2, 0.9, 3.0, -1.0, 2.0};
    const auto law = transition_law(p, 0.4, 1.1);
    for (double x : {-3.0, 0.0, 2.5}) EXPECT_NEAR(law.mean(x), cond_mean(p, 0.4, x, 1.1), 1e-12);
    EXPECT_NEAR(law.stddev, cond_std(p, 0.4, 1.1), 1e-15);

    const auto last = transition_law(p, 1.5, 2.0);
    EXPECT_EQ(last.slope, 0.0);
    EXPECT_EQ(last.offset, 3.0);
    EXPECT_EQ(last.stddev, 0.0);
}

TEST(SampleTransition, ReturnsPinExactlyAtHorizon) {
    RngStream rng(1, 0);
    const auto p = unit_bridge(1.0, 1.0, 0.37);
    for (double x : {-4.0, 0.0, 9.0}) EXPECT_EQ(sample_transition(p, {0.8, x}, 1.0, rng), 0.37);
}

TEST(SampleTransition, RejectsBackwardSteps) {
    RngStream rng(1, 0);
    EXPECT_THROW(sample_transition(unit_bridge(), {0.5, 0.0}, 0.5, rng), std::domain_error);
    EXPECT_THROW(sample_transition(unit_bridge(), {0.5, 0.0}, 0.4, rng), std::domain_error);
}

TEST(SampleTransition, LawOfLargeNumbers) {
    RngStream rng(2024, 3);
    const auto p = unit_bridge();
    constexpr int n = 1'000'000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double x = sample_transition(p, {0.0, 0.0}, 0.5, rng);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    EXPECT_LT(std::abs(mean), 4.0 * kCondStdReference / 1e3);
    // Var of the sample variance of a Gaussian is 2 sigma^4 / n.
    const double sigma2 = kCondStdReference * kCondStdReference;
    EXPECT_LT(std::abs(var - sigma2), 4.0 * std::sqrt(2.0 / n) * sigma2);
}

TEST(SampleTransition, StreamsAreDeterministic) {
    RngStream a(99, 5);
    RngStream b(99, 5);
    RngStream c(99, 6);
    const auto p = unit_bridge(0.5, 2.0, 1.0);
    bool differs = false;
    for (int k = 0; k < 100; ++k) {
        const double xa = sample_transition(p, {0.1, 0.2}, 0.6, a);
        const double xb = sample_transition(p, {0.1, 0.2}, 0.6, b);
        const double xc = sample_transition(p, {0.1, 0.2}, 0.6, c);
        EXPECT_EQ(xa, xb);
        differs = differs || xa != xc;
    }
    EXPECT_TRUE(differs);
}

TEST(CanonicalReduction, IdentityForCanonicalParams) {
    const auto red = reduce_to_canonical(unit_bridge(2.0, 0.5, -1.0));
    EXPECT_EQ(red.canonical().alpha, 2.0);
    EXPECT_EQ(red.canonical().gamma, 0.5);
    EXPECT_EQ(red.canonical().z, -1.0);
    EXPECT_EQ(red.time_scale(), 1.0);
    EXPECT_EQ(red.space_shift(), 0.0);
    EXPECT_EQ(red.to_canonical_time(0.3), 0.3);
}

TEST(CanonicalReduction, HorizonScaling) {
    // alpha = 1, gamma = 2^{-1/2}, T = 2 is the r = 2 image of (alpha = 2, gamma = 1, T = 1).
    const auto red = reduce_to_canonical({1.0, 1.0 / std::sqrt(2.0), 0.0, 0.0, 2.0});
    EXPECT_EQ(red.canonical().alpha, 2.0);
    EXPECT_NEAR(red.canonical().gamma, 1.0, 1e-15);
    EXPECT_EQ(red.canonical().horizon, 1.0);
    EXPECT_EQ(red.time_scale(), 0.5);
    EXPECT_EQ(red.to_canonical_time(2.0), 1.0);
}

TEST(CanonicalReduction, PullingLevelShift) {
    const auto red = reduce_to_canonical({1.0, 1.0, 5.0, 5.0, 1.0});
    EXPECT_EQ(red.canonical().z, 0.0);
    EXPECT_EQ(red.space_shift(), 5.0);
    EXPECT_EQ(red.from_canonical_space(0.8), 5.8);
}

TEST(CanonicalReduction, RoundTrip) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const OUBParams p{1.0, 1.0, 0.0, -10.0 + 20.0 * u(gen), 0.1 + 10.0 * u(gen)};
        const auto red = reduce_to_canonical(p);
        const ProcessState s{p.horizon * u(gen), -20.0 + 40.0 * u(gen)};
        const auto back = red.from_canonical(red.to_canonical(s));
        EXPECT_NEAR(back.t, s.t, 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, s.t));
        EXPECT_NEAR(back.x, s.x, 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(s.x) + std::abs(p.theta)));
    }
}

}  // namespace
}  // namespace oubstop
