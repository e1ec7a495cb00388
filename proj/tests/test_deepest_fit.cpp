#include <gtest/gtest.h>

#include <cmath>

#include <rdepth/deepest_fit.hpp>
#include <rdepth/population.hpp>

#include "oracles.hpp"

using namespace rdepth;

namespace {

std::vector<double> line_through(const ObservationSet& set, std::size_t a, std::size_t b) {
    const double s = (set[b].y - set[a].y) / (set[b].x[0] - set[a].x[0]);
    return {set[a].y - s * set[a].x[0], s};
}

}  // namespace

TEST(ExactFit, CollinearData) {
    std::vector<Observation> obs;
    for (int i = 0; i < 9; ++i) obs.push_back({{i * 0.5 - 2.0}, 1.0 + 2.0 * (i * 0.5 - 2.0)});
    const auto r = fit_exact_p2(ObservationSet(std::move(obs), 2));
    EXPECT_EQ(r.beta_hat, (ParamVector{1.0, 2.0}));
    EXPECT_EQ(r.depth.normalized, 1.0);
    EXPECT_EQ(r.tie_set_size, 1u);
    EXPECT_EQ(r.method, FitMethod::exact_p2);
}

TEST(ExactFit, FourPointsMatchPairwiseArgmax) {
    const auto set = oracle::fourpoints();
    const auto r = fit_exact_p2(set);
    const auto o = oracle::naive_fit_p2(set);
    EXPECT_EQ(*r.depth.count, static_cast<double>(o.best));
    std::vector<std::vector<double>> lines;
    for (auto [a, b] : o.argmax) lines.push_back(line_through(set, a, b));
    const auto reps = detail::cluster_params(lines, kTieTolerance);
    ASSERT_EQ(reps.size(), r.tie_set_size);
    double m0 = 0, m1 = 0;
    for (const auto& l : reps) m0 += l[0] / reps.size(), m1 += l[1] / reps.size();
    EXPECT_NEAR(r.beta_hat[0], m0, 1e-12);
    EXPECT_NEAR(r.beta_hat[1], m1, 1e-12);
}

TEST(ExactFit, AgreesWithPairwiseEnumeration) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const std::size_t n = 2 + seed % 25;
        const auto set = seed % 3 == 0   ? oracle::random_set(n, seed)
                         : seed % 3 == 1 ? oracle::lattice_set(n, seed)
                                         : oracle::random_set(n, seed, true);
        if (XRanks(set).distinct.size() < 2) continue;
        const auto r = fit_exact_p2(set);
        const auto o = oracle::naive_fit_p2(set);
        ASSERT_EQ(*r.depth.count, static_cast<double>(o.best)) << seed;
        std::vector<std::vector<double>> lines;
        for (auto [a, b] : o.argmax) lines.push_back(line_through(set, a, b));
        const auto reps = detail::cluster_params(lines, kTieTolerance);
        ASSERT_EQ(reps.size(), r.tie_set_size) << seed;
        for (std::size_t k = 0; k < reps.size(); ++k)
            for (int j = 0; j < 2; ++j) EXPECT_NEAR(reps[k][j], r.tie_set[k][j], 1e-9) << seed;
    }
}

TEST(ExactFit, TieRuleAndRecomputedDepth) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto set = oracle::lattice_set(6 + seed % 7, seed, 1);  // dyadic slopes keep vertex lines exact
        if (XRanks(set).distinct.size() < 2) continue;
        const auto r = fit_exact_p2(set);
        double m0 = 0, m1 = 0;
        for (const auto& b : r.tie_set) m0 += b[0], m1 += b[1];
        EXPECT_NEAR(r.beta_hat[0], m0 / r.tie_set_size, 1e-12);
        EXPECT_NEAR(r.beta_hat[1], m1 / r.tie_set_size, 1e-12);
        EXPECT_EQ(r.depth_at_beta_hat, rd_normalized(set, r.beta_hat).normalized);
        EXPECT_LE(r.depth_at_beta_hat, r.depth.normalized);
        for (const auto& b : r.tie_set) EXPECT_EQ(rd_normalized(set, b).normalized, r.depth.normalized);
        if (r.tie_set_size == 1) {
            EXPECT_EQ(r.depth_at_beta_hat, r.depth.normalized);
        }
    }
}

TEST(ExactFit, NormalSampleOfFiveHundred) {
    const auto set = sample(BivariateNormalStd{}, 500, 42);
    const auto r = fit_exact_p2(set);
    EXPECT_LE(std::hypot(r.beta_hat[0], r.beta_hat[1]), 0.2);
    EXPECT_GE(r.depth_at_beta_hat, 0.45);
    EXPECT_LE(r.depth_at_beta_hat, 0.5);
}

TEST(ExactFit, Errors) {
    EXPECT_THROW(fit_exact_p2(ObservationSet({{{1.0}, 0.0}, {{1.0}, 2.0}}, 2)), std::invalid_argument);
    EXPECT_THROW(fit_exact_p2(ObservationSet({{{1.0, 2.0}, 0.0}, {{0.0, 1.0}, 2.0}}, 3)), std::invalid_argument);
}

TEST(ExactFit, Equivariance) {
    int singletons = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto set = oracle::random_set(15, seed);
        const auto r = fit_exact_p2(set);
        if (r.tie_set_size != 1) continue;
        ++singletons;
        const std::vector<double> b{0.75, -1.25};
        const auto rs = fit_exact_p2(transform_regression(set, b));
        EXPECT_NEAR(rs.beta_hat[0], r.beta_hat[0] + b[0], 1e-9);
        EXPECT_NEAR(rs.beta_hat[1], r.beta_hat[1] + b[1], 1e-9);
        const auto rc = fit_exact_p2(transform_scale(set, -2.5));
        EXPECT_NEAR(rc.beta_hat[0], -2.5 * r.beta_hat[0], 1e-9);
        EXPECT_NEAR(rc.beta_hat[1], -2.5 * r.beta_hat[1], 1e-9);
        EXPECT_EQ(rs.depth.normalized, r.depth.normalized);
    }
    EXPECT_GT(singletons, 10);
}

TEST(Search, DominatedByExact) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto set = oracle::random_set(10 + seed % 30, seed);
        const auto ex = fit_exact_p2(set);
        const auto se = fit_search(set, 4, seed);
        EXPECT_EQ(se.method, FitMethod::search);
        EXPECT_FALSE(se.depth.exact);
        EXPECT_GE(se.depth.normalized, ex.depth.normalized - 1.0 / set.size()) << seed;
        EXPECT_LE(rd_normalized(set, se.beta_hat).normalized, ex.depth.normalized);
    }
}

TEST(Search, Deterministic) {
    const auto set = oracle::random_set(30, 9);
    const auto a = fit_search(set, 3, 17), b = fit_search(set, 3, 17);
    EXPECT_EQ(a.beta_hat, b.beta_hat);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Search, RecoversHyperplaneInThreeDimensions) {
    std::vector<Observation> obs;
    for (int i = 0; i < 15; ++i) {
        const double a = std::cos(i * 0.9) * 2.0, b = std::sin(i * 1.7);
        obs.push_back({{a, b}, -1.0 + 0.5 * a + 3.0 * b});
    }
    const auto r = fit_search(ObservationSet(std::move(obs), 3), 2, 1);
    EXPECT_EQ(r.depth.normalized, 1.0);
    EXPECT_NEAR(r.beta_hat[0], -1.0, 1e-9);
    EXPECT_NEAR(r.beta_hat[1], 0.5, 1e-9);
    EXPECT_NEAR(r.beta_hat[2], 3.0, 1e-9);
}

TEST(Search, TwoPointsInterpolate) {
    const ObservationSet set({{{0.0}, 1.0}, {{2.0}, 5.0}}, 2);
    const auto r = fit_search(set, 1, 3);
    EXPECT_EQ(r.depth.normalized, 1.0);
    EXPECT_NEAR(r.beta_hat[0], 1.0, 1e-9);
    EXPECT_NEAR(r.beta_hat[1], 2.0, 1e-9);
    EXPECT_THROW(fit_search(set, 0, 3), std::invalid_argument);
}
