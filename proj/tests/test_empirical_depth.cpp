#include <gtest/gtest.h>

#include <cmath>

#include <rdepth/empirical_depth.hpp>

#include "oracles.hpp"

using namespace rdepth;

namespace {

const ParamVector kZero{0.0, 0.0};

ObservationSet line_set(std::size_t n, double b0, double b1) {
    std::vector<Observation> obs;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / 4.0 - 1.0;
        obs.push_back({{x}, b0 + b1 * x});
    }
    return ObservationSet(std::move(obs), 2);
}

}  // namespace

TEST(Decompose, SingleObservation) {
    const auto d = decompose_directions_p2(ObservationSet({{{0.0}, 1.0}}, 2));
    ASSERT_EQ(d.critical_angles.size(), 2u);
    EXPECT_NEAR(d.critical_angles[0], M_PI / 2, 1e-15);
    EXPECT_NEAR(d.critical_angles[1], 3 * M_PI / 2, 1e-15);
    EXPECT_EQ(d.cell_midpoints.size(), 2u);
}

TEST(Decompose, FourPointsGiveEightAngles) {
    const auto set = oracle::fourpoints();
    const auto d = decompose_directions_p2(set);
    EXPECT_EQ(d.critical_angles.size(), 8u);
    EXPECT_EQ(d.cell_midpoints.size(), 8u);
    EXPECT_TRUE(std::is_sorted(d.critical_angles.begin(), d.critical_angles.end()));
    // Every w_i is orthogonal to some boundary direction; midpoints are off every boundary.
    for (const auto& o : set) {
        bool hit = false;
        for (const auto& b : d.boundary_directions) hit = hit || std::abs(b[0] + b[1] * o.x[0]) < 1e-12;
        EXPECT_TRUE(hit);
        for (const auto& m : d.cell_midpoints) EXPECT_GT(std::abs(m[0] + m[1] * o.x[0]), 1e-6);
    }
}

TEST(Decompose, SignVectorConstantWithinCells) {
    const auto set = oracle::random_set(9, 3);
    const auto d = decompose_directions_p2(set);
    const auto& a = d.critical_angles;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double lo = a[k], hi = k + 1 < a.size() ? a[k + 1] : a[0] + 2 * M_PI;
        for (const auto& o : set) {
            int first = 0;
            for (int t = 1; t < 10; ++t) {
                const double ang = lo + (hi - lo) * t / 10.0;
                const double v = std::cos(ang) + std::sin(ang) * o.x[0];
                const int s = (v > 0) - (v < 0);
                if (t == 1) first = s;
                EXPECT_EQ(s, first);
            }
        }
    }
}

TEST(Decompose, DuplicatesCollapse) {
    const auto d = decompose_directions_p2(ObservationSet({{{0.5}, 1.0}, {{0.5}, -2.0}, {{1.5}, 0.0}}, 2));
    EXPECT_EQ(d.critical_angles.size(), 4u);
    EXPECT_THROW(decompose_directions_p2(ObservationSet({{{0.5, 1.0}, 1.0}}, 3)), std::invalid_argument);
}

TEST(Golden, FourPointQuadruple) {
    const auto set = oracle::fourpoints();
    const auto a = rd_normalized(set, kZero);
    const auto b = rd_count_bh99(set, kZero);
    const auto c = rd_sign_bh992(set, kZero);
    EXPECT_EQ(a.normalized, 0.5);
    EXPECT_EQ(*a.count, 2.0);
    EXPECT_EQ(*b.count, 1.0);
    EXPECT_EQ(*c.count, 1.5);
    EXPECT_TRUE(a.exact && b.exact && c.exact);
    EXPECT_EQ(rd_bruteforce_oracle(set, kZero, 100000).normalized, 0.5);
}

TEST(Golden, WitnessAttainsMinimum) {
    const auto set = oracle::fourpoints();
    const auto a = rd_normalized(set, kZero);
    ASSERT_TRUE(a.witness);
    const auto s = residual_signs(set, kZero);
    EXPECT_EQ(oracle::count_at(set, s, (*a.witness)[0], (*a.witness)[1]), 2);
}

TEST(Trivial, SingleObservation) {
    const ObservationSet on({{{1.0}, 0.0}}, 2);
    EXPECT_EQ(rd_normalized(on, kZero).normalized, 1.0);
    EXPECT_EQ(*rd_sign_bh992(on, kZero).count, 0.5);
    const ObservationSet off({{{1.0}, 2.0}}, 2);
    EXPECT_EQ(*rd_count_bh99(off, kZero).count, 0.0);
}

TEST(Trivial, PointsOnTheLine) {
    const auto set = line_set(7, 1.0, 2.0);
    EXPECT_EQ(rd_normalized(set, ParamVector{1.0, 2.0}).normalized, 1.0);
    EXPECT_EQ(rd_bruteforce_oracle(set, ParamVector{1.0, 2.0}, 1000).normalized, 1.0);
}

TEST(Oracle, EightRandomPoints) {
    const auto set = oracle::random_set(8, 2024);
    const ParamVector beta{0.3, -0.2};
    const auto e = rd_normalized(set, beta);
    EXPECT_TRUE(e.exact);
    EXPECT_EQ(e.normalized, rd_bruteforce_oracle(set, beta, 100000).normalized);
}

TEST(Oracle, ManyInstancesWithZeros) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto set = oracle::lattice_set(3 + seed % 10, seed);
        const ParamVector beta{static_cast<double>(seed % 3) - 1.0, static_cast<double>(seed % 5) * 0.5 - 1.0};
        EXPECT_EQ(rd_normalized(set, beta).normalized, rd_bruteforce_oracle(set, beta, 20000).normalized) << seed;
    }
}

TEST(Oracle, ErrorsOutsideRange) {
    const ObservationSet p4({{{1.0, 2.0, 3.0}, 0.0}}, 4);
    EXPECT_THROW(rd_bruteforce_oracle(p4, ParamVector{0, 0, 0, 0}, 1000), std::invalid_argument);
    EXPECT_THROW(rd_bruteforce_oracle(oracle::fourpoints(), kZero, 10), std::invalid_argument);
    EXPECT_THROW(rd_normalized(oracle::fourpoints(), ParamVector{0, 0, 0}), std::invalid_argument);
}

TEST(CountForm, MatchesDefinitionAndNoTieIdentity) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto set = seed % 2 ? oracle::random_set(2 + seed % 11, seed) : oracle::lattice_set(2 + seed % 11, seed);
        const ParamVector beta{0.25, -0.5};
        const auto c = rd_count_bh99(set, beta);
        EXPECT_EQ(*c.count, static_cast<double>(oracle::count_form_bruteforce(set, beta))) << seed;
        EXPECT_LE(*c.count, std::floor(set.size() / 2.0));
        EXPECT_NEAR(c.normalized, *c.count / set.size(), 1e-12);
    }
    // Distinct x, no zero residuals: count form equals n times the normalized depth.
    const auto set = oracle::random_set(10, 77);
    const ParamVector beta{0.1, 0.2};
    EXPECT_EQ(*rd_count_bh99(set, beta).count, 10.0 * rd_normalized(set, beta).normalized);
}

TEST(SignForm, MatchesDenseGridWithBoundaries) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto set = seed % 2 ? oracle::random_set(8, seed) : oracle::lattice_set(2 + seed % 11, seed);
        const ParamVector beta{seed % 2 ? 0.3 : 0.0, seed % 2 ? -0.2 : 1.0};
        EXPECT_EQ(*rd_sign_bh992(set, beta).count, oracle::sign_form_bruteforce(set, beta, 20000)) << seed;
    }
}

TEST(HigherDim, SampledIsInexactAndMonotoneInBudget) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    std::vector<Observation> obs;
    for (int i = 0; i < 40; ++i) obs.push_back({{nd(rng), nd(rng)}, nd(rng)});
    const ObservationSet set(std::move(obs), 3);
    const ParamVector beta{0.1, 0.2, -0.1};
    double prev = 2.0;
    for (std::size_t dirs : {32, 64, 128, 512, 2048, 8192}) {
        DepthOptions o;
        o.dirs = dirs;
        const auto d = rd_normalized(set, beta, o);
        EXPECT_FALSE(d.exact);
        EXPECT_LE(d.normalized, prev);
        prev = d.normalized;
    }
    // A sampled minimum can only sit above the true infimum; the dense oracle agrees closely.
    const double oracle_value = rd_bruteforce_oracle(set, beta, 200000).normalized;
    EXPECT_LE(std::abs(prev - oracle_value), 1.0 / 40 + 1e-12);
    EXPECT_FALSE(rd_count_bh99(set, beta).exact);
    EXPECT_FALSE(rd_sign_bh992(set, beta).exact);
}

TEST(HigherDim, HyperplaneThroughAllPointsHasDepthOne) {
    std::vector<Observation> obs;
    for (int i = 0; i < 12; ++i) {
        const double a = i * 0.37 - 2.0, b = std::sin(i * 1.3);
        obs.push_back({{a, b}, 0.5 + 2.0 * a - b});
    }
    const ObservationSet set(std::move(obs), 3);
    EXPECT_EQ(rd_normalized(set, ParamVector{0.5, 2.0, -1.0}).normalized, 1.0);
}

TEST(Invariance, AllFormulationsUnderTransforms) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto set = oracle::random_set(11, seed, true);
        const ParamVector beta{0.125, -0.25};
        const std::vector<double> b{0.5, -1.5};
        Eigen::MatrixXd A(1, 1);
        A << -2.0;
        const ObservationSet sets[] = {transform_regression(set, b), transform_scale(set, -3.0), transform_affine(set, A)};
        const ParamVector betas[] = {shift_param(beta, b), scale_param(beta, -3.0), affine_param(beta, A)};
        for (int t = 0; t < 3; ++t) {
            EXPECT_EQ(rd_normalized(sets[t], betas[t]).normalized, rd_normalized(set, beta).normalized);
            EXPECT_EQ(*rd_count_bh99(sets[t], betas[t]).count, *rd_count_bh99(set, beta).count);
            EXPECT_EQ(*rd_sign_bh992(sets[t], betas[t]).count, *rd_sign_bh992(set, beta).count);
        }
    }
}
