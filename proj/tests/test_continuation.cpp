#include "macoll/continuation.hpp"
#include "macoll/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace macoll;

namespace {

CoeffTriangle constant_one(int degree) {
    CoeffTriangle c(0);
    c(0, 0) = 1.0;
    return embed(c, degree);
}

}  // namespace

TEST(SolveOnce, RecoversQuadraticFromPerturbedStart) {
    const MAProblem p = quadratic_problem(1.0);
    CoeffTriangle start(2);
    start(2, 0) = 0.9;
    start(0, 2) = 1.1;
    const SolveReport r = solve_once(p, 2, start, {});
    for (int m = 0; m <= 2; ++m) {
        for (int n = 0; m + n <= 2; ++n) {
            EXPECT_NEAR(r.coeffs(m, n), (*p.exact_coefficients)(m, n), 1e-10) << m << "," << n;
        }
    }
    EXPECT_LE(r.sum_sq_final, 1e-20);
    EXPECT_EQ(r.start, start);
    EXPECT_EQ(r.unknowns, 6u);
    EXPECT_EQ(r.domain_points, 9u);
    EXPECT_EQ(r.boundary_points, 8u);
}

TEST(SolveOnce, DegreeZeroLeavesMinusG) {
    const MAProblem p = exp_problem();
    const SolveReport r = solve_once(p, 0, constant_one(0), {});
    // A constant has no curvature, so every PDE residual is -g.
    double norm_sq = 0.0;
    for (const Point2& z : regular_points(0).domain_points) {
        norm_sq += p.g(z) * p.g(z);
    }
    EXPECT_NEAR(r.pde_residual_final, std::sqrt(norm_sq), 1e-12);
    EXPECT_NEAR(r.pde_residual_initial, std::sqrt(norm_sq), 1e-12);
    EXPECT_LT(r.boundary_residual_final, r.boundary_residual_initial);
}

TEST(SolveOnce, ResidualBookkeeping) {
    const SolveReport r = solve_once(exp_problem(), 4, taylor_start(4), {});
    EXPECT_NEAR(r.sum_sq_final,
                r.pde_residual_final * r.pde_residual_final +
                    r.boundary_residual_final * r.boundary_residual_final,
                1e-12 * (1.0 + r.sum_sq_final));
    EXPECT_DOUBLE_EQ(r.sum_sq_initial, r.trace.initial_sum_sq());
    EXPECT_DOUBLE_EQ(r.sum_sq_final, r.trace.final_sum_sq());
    EXPECT_LE(r.sum_sq_final, r.sum_sq_initial);
}

TEST(SolveOnce, RejectsStartOfWrongDegree) {
    EXPECT_THROW(solve_once(exp_problem(), 4, taylor_start(2), {}), DimensionError);
}

TEST(Sweep, ColdChainSeedsWithPreviousOptimum) {
    const SweepResult res = sweep(exp_problem(), {});
    ASSERT_FALSE(res.failure);
    ASSERT_EQ(res.reports.size(), 7u);
    EXPECT_EQ(res.reports[0].start, constant_one(0));
    for (std::size_t i = 1; i < res.reports.size(); ++i) {
        EXPECT_EQ(res.reports[i].start, embed(res.reports[i - 1].coeffs, res.reports[i].degree));
    }
}

TEST(Sweep, SumOfSquaresNeverIncreases) {
    const SweepResult res = sweep(exp_problem(), {});
    for (const SolveReport& r : res.reports) {
        EXPECT_LE(r.sum_sq_final, r.sum_sq_initial);
    }
}

TEST(Sweep, RmseDecreasesFromDegreeFour) {
    const SweepResult res = sweep(exp_problem(), {});
    for (std::size_t i = 1; i < res.reports.size(); ++i) {
        if (res.reports[i].degree > 4) {
            EXPECT_LT(*res.reports[i].metrics.rmse_solution,
                      *res.reports[i - 1].metrics.rmse_solution);
        }
    }
    EXPECT_LE(*res.reports.back().metrics.rmse_solution, 1e-5);
}

TEST(Sweep, TaylorStarts) {
    SweepConfig cfg;
    cfg.degrees = {2, 4};
    cfg.start_mode = StartMode::taylor;
    const SweepResult res = sweep(exp_problem(), cfg);
    ASSERT_EQ(res.reports.size(), 2u);
    EXPECT_EQ(res.reports[0].start, taylor_start(2));
    EXPECT_EQ(res.reports[1].start, taylor_start(4));
}

TEST(Sweep, TaylorNeedsTaylorData) {
    MAProblem p = exp_problem();
    p.taylor.reset();
    SweepConfig cfg;
    cfg.start_mode = StartMode::taylor;
    EXPECT_THROW(sweep(p, cfg), InvalidInput);
}

TEST(Sweep, WarmStartOnSharedPointsKeepsResidual) {
    // On a common point set the embedded optimum has the same residual,
    // so the next degree starts exactly where the previous one ended.
    SweepConfig cfg;
    cfg.degrees = {4, 6};
    cfg.fixed_points = regular_points(6);
    const SweepResult res = sweep(exp_problem(), cfg);
    ASSERT_EQ(res.reports.size(), 2u);
    EXPECT_NEAR(res.reports[1].sum_sq_initial, res.reports[0].sum_sq_final,
                1e-12 * res.reports[0].sum_sq_final);
    EXPECT_LE(res.reports[1].sum_sq_final, res.reports[0].sum_sq_final);
}

TEST(Sweep, ChainSeedReplacesConstant) {
    SweepConfig cfg;
    cfg.degrees = {2};
    cfg.chain_seed = taylor_start(2);
    const SweepResult res = sweep(exp_problem(), cfg);
    EXPECT_EQ(res.reports[0].start, taylor_start(2));
    cfg.chain_seed = taylor_start(4);
    EXPECT_THROW(sweep(exp_problem(), cfg), InvalidInput);
}

TEST(Sweep, OversampledPoints) {
    SweepConfig cfg;
    cfg.degrees = {0, 2, 4};
    cfg.oversample_safety = 1.0;
    const SweepResult res = sweep(exp_problem(), cfg);
    ASSERT_EQ(res.reports.size(), 3u);
    EXPECT_EQ(res.reports[0].domain_points, 9u);
    EXPECT_EQ(res.reports[1].domain_points, 81u);
    EXPECT_EQ(res.reports[2].domain_points, 33u * 33u);
    EXPECT_EQ(res.reports[2].boundary_points, 128u);
}

TEST(Sweep, FailureKeepsCompletedReports) {
    // An absurd right-hand side at nodes that first appear at degree 4
    // drives the minimizer to overflow there.
    MAProblem p = exp_problem();
    const auto g = p.g;
    p.g = [g](Point2 z) { return std::abs(z.x) == 0.5 ? 1e300 : g(z); };
    SweepConfig cfg;
    cfg.degrees = {0, 2, 4, 6};
    const SweepResult res = sweep(p, cfg);
    ASSERT_TRUE(res.failure);
    EXPECT_EQ(res.failure->degree, 4);
    EXPECT_NE(res.failure->message.find("degree 4"), std::string::npos);
    EXPECT_EQ(res.reports.size(), 2u);
}

TEST(SweepConfig, Validation) {
    const auto bad = [](auto mutate) {
        SweepConfig cfg;
        mutate(cfg);
        return cfg;
    };
    const MAProblem p = exp_problem();
    EXPECT_THROW(sweep(p, bad([](SweepConfig& c) { c.degrees.clear(); })), InvalidInput);
    EXPECT_THROW(sweep(p, bad([](SweepConfig& c) { c.degrees = {4, 2}; })), InvalidInput);
    EXPECT_THROW(sweep(p, bad([](SweepConfig& c) { c.degrees = {-2}; })), InvalidInput);
    EXPECT_THROW(sweep(p, bad([](SweepConfig& c) { c.boundary_weight = 0.0; })), InvalidInput);
    EXPECT_THROW(sweep(p, bad([](SweepConfig& c) { c.oversample_safety = 2.0; })), InvalidInput);
    EXPECT_THROW(sweep(p, bad([](SweepConfig& c) { c.lsq.max_iterations = -1; })), InvalidInput);
}

TEST(PointsFor, DegreeZeroIgnoresOversampling) {
    SweepConfig cfg;
    cfg.oversample_safety = 0.5;
    EXPECT_EQ(points_for(0, cfg).domain_points.size(), 9u);
    EXPECT_EQ(points_for(2, cfg).boundary_points, oversampled_points(2, 0.5).boundary_points);
}
