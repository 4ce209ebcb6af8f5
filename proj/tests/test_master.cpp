#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mgame/games.hpp"
#include "mgame/master.hpp"

using mgame::DriftModel;
using mgame::Matrix;
using mgame::TimeGrid;
using mgame::Vector;

namespace {

DriftModel decay_drift() {
    DriftModel d;
    d.dim = 1;
    d.eval = [](const Vector& x, double) { return Vector(-x); };
    return d;
}

Vector scalar(double v) { return Vector::Constant(1, v); }

struct AffineCase {
    Matrix A;
    Matrix C;  // c(t) = C * (sin t, cos t, 1)
};

AffineCase random_stable_affine(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = u(rng);
    Matrix S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S(i, j) = u(rng);
    // Negative definite symmetric part plus a skew part: all eigenvalues in the left half plane.
    const Matrix A = -(M * M.transpose() + 0.5 * Matrix::Identity(n, n)) + (S - S.transpose());
    Matrix C(n, 3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 3; ++j) C(i, j) = 2.0 * u(rng);
    return {A, C};
}

DriftModel affine_drift(const AffineCase& c, bool analytic) {
    DriftModel d;
    d.dim = static_cast<int>(c.A.rows());
    d.eval = [c](const Vector& x, double t) {
        return Vector(c.A * x + c.C * Eigen::Vector3d(std::sin(t), std::cos(t), 1.0));
    };
    if (analytic) d.analytic_jacobian = [c](const Vector&, double) { return c.A; };
    return d;
}

double affine_gap(const DriftModel& drift, std::mt19937_64& rng, int lambdas) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const int n = drift.dim;
    Vector x0(n);
    for (int i = 0; i < n; ++i) x0(i) = u(rng);
    const TimeGrid grid = TimeGrid::make(0.0, 2.0, 1e-2);
    const auto X = mgame::integrate(drift.eval, x0, grid);
    double worst = 0.0;
    for (int trial = 0; trial < lambdas; ++trial) {
        Vector lambda(n);
        for (int i = 0; i < n; ++i) lambda(i) = u(rng);
        const auto sol = mgame::solve_master(drift, lambda, x0, grid);
        for (Eigen::Index k = 0; k < X.states.rows(); ++k) {
            const Vector diff = sol.U.states.row(k).transpose() - (X.states.row(k).transpose() - lambda);
            worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

}  // namespace

TEST(MasterRhs, DecayDrift) {
    const auto rhs = mgame::master_rhs(decay_drift(), scalar(0.5));
    EXPECT_NEAR(rhs(scalar(2.0), 0.0)(0), -2.0 - 0.5, 1e-9);
    EXPECT_NEAR(rhs(scalar(-1.0), 3.0)(0), 1.0 - 0.5, 1e-9);
}

TEST(MasterRhs, ZeroDriftIsZero) {
    DriftModel d;
    d.dim = 2;
    d.eval = [](const Vector&, double) { return Vector(Vector::Zero(2)); };
    const auto rhs = mgame::master_rhs(d, Vector::Constant(2, 4.0));
    EXPECT_EQ(rhs(Vector::Constant(2, 1.5), 0.2).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MasterRhs, Example1Linearisation) {
    const mgame::Example1Params p;
    const DriftModel d = mgame::example1_drift(p);
    const double lam = 0.7, u = -0.3, t = 1.3;
    const double expected = -(3 * p.a * lam * lam + 2 * p.b * lam + p.c) * u -
                            (p.a * lam * lam * lam + p.b * lam * lam + p.c * lam) - p.sigma * t * t -
                            p.chi * t * t * std::sin(p.Omega * t);
    EXPECT_NEAR(mgame::master_rhs(d, scalar(lam))(scalar(u), t)(0), expected, 1e-12);
}

TEST(MasterRhs, RejectsBadLambda) {
    EXPECT_THROW(mgame::master_rhs(decay_drift(), Vector::Zero(2)), std::invalid_argument);
    EXPECT_THROW(mgame::master_rhs(decay_drift(), scalar(std::nan(""))), std::invalid_argument);
}

TEST(SolveMaster, DecayClosedForm) {
    const auto sol = mgame::solve_master(decay_drift(), scalar(0.5), scalar(1.0), TimeGrid::make(0.0, 1.0, 1e-3));
    EXPECT_NEAR(sol.U.final_state()(0), std::exp(-1.0) - 0.5, 1e-9);
    EXPECT_NEAR(sol.U.final_state()(0), -0.13212056, 1e-8);
}

TEST(SolveMaster, LambdaAtInitialStateStartsAtZero) {
    const DriftModel d = mgame::example1_drift({});
    const auto sol = mgame::solve_master(d, scalar(0.25), scalar(0.25), TimeGrid::make(0.0, 1.0, 0.1));
    EXPECT_EQ(sol.U.state(0)(0), 0.0);
}

TEST(SolveMaster, AffineExactnessAnalyticJacobian) {
    std::mt19937_64 rng(2024);
    for (int n = 1; n <= 3; ++n) {
        const auto c = random_stable_affine(rng, n);
        EXPECT_LE(affine_gap(affine_drift(c, true), rng, 10), 1e-9) << "n=" << n;
    }
}

TEST(SolveMaster, AffineExactnessFiniteDifferenceJacobian) {
    std::mt19937_64 rng(77);
    for (int n = 1; n <= 3; ++n) {
        const auto c = random_stable_affine(rng, n);
        EXPECT_LE(affine_gap(affine_drift(c, false), rng, 10), 1e-9) << "n=" << n;
    }
}

TEST(SolveMaster, AffineLambdaShiftInvariance) {
    std::mt19937_64 rng(3);
    const auto c = random_stable_affine(rng, 3);
    const DriftModel d = affine_drift(c, false);
    const Vector x0 = Vector::Constant(3, 1.0);
    const TimeGrid grid = TimeGrid::make(0.0, 1.0, 1e-2);
    const Vector l1 = Vector::Constant(3, -0.4);
    const Vector l2 = Vector::Constant(3, 2.5);
    const auto a = mgame::solve_master(d, l1, x0, grid);
    const auto b = mgame::solve_master(d, l2, x0, grid);
    const Matrix shifted_a = a.U.states.rowwise() + l1.transpose();
    const Matrix shifted_b = b.U.states.rowwise() + l2.transpose();
    EXPECT_LE((shifted_a - shifted_b).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LambdaPath, DecayFollowsExponential) {
    const TimeGrid grid = TimeGrid::make(0.0, 1.0, 1e-2);
    const auto path = mgame::solve_lambda_path(decay_drift(), 1.0, grid, {});
    ASSERT_TRUE(path.complete()) << path.failure;
    ASSERT_EQ(path.lambda.size(), grid.nodes());
    for (std::size_t k = 0; k < path.lambda.size(); ++k)
        EXPECT_NEAR(path.lambda[k], std::exp(-path.times[k]), 1e-6) << "t=" << path.times[k];
}

TEST(LambdaPath, StartsAtInitialState) {
    const auto path = mgame::solve_lambda_path(mgame::example1_drift({}), 0.3, TimeGrid::make(0.0, 0.5, 0.1), {});
    EXPECT_EQ(path.lambda.front(), 0.3);
    EXPECT_EQ(path.residual.front(), 0.0);
}

TEST(LambdaPath, ResidualsWithinTolerance) {
    const mgame::RootConfig cfg;
    const auto path = mgame::solve_lambda_path(mgame::example1_drift({}), 0.0, TimeGrid::make(0.0, 2.0, 0.05), cfg);
    ASSERT_FALSE(path.lambda.empty());
    for (double r : path.residual) EXPECT_LE(r, cfg.abs_tol);
}

TEST(LambdaPath, SingleNodeGrid) {
    const auto path = mgame::solve_lambda_path(decay_drift(), 2.0, TimeGrid::make(0.0, 0.0, 0.1), {});
    EXPECT_TRUE(path.complete());
    ASSERT_EQ(path.lambda.size(), 1u);
    EXPECT_EQ(path.lambda[0], 2.0);
}

TEST(LambdaPath, ReportsMissingRoot) {
    // U(t, lambda) = x0 - lambda + t for b = 1: the root moves by t, so a
    // bracket search capped at one tiny width never finds it.
    DriftModel d;
    d.dim = 1;
    d.eval = [](const Vector&, double) { return scalar(1.0); };
    mgame::BracketExpansion tight;
    tight.min_half_width = 1e-6;
    tight.rel_half_width = 0.0;
    tight.max_expansions = 0;
    const auto path = mgame::solve_lambda_path(d, 0.0, TimeGrid::make(0.0, 1.0, 0.1), {}, tight);
    EXPECT_FALSE(path.complete());
    EXPECT_EQ(path.failed_at, std::optional<std::size_t>(1));
    EXPECT_EQ(path.lambda.size(), 1u);
}

TEST(LambdaPath, RejectsVectorDrift) {
    DriftModel d;
    d.dim = 2;
    d.eval = [](const Vector& x, double) { return Vector(-x); };
    EXPECT_THROW(mgame::solve_lambda_path(d, 0.0, TimeGrid::make(0.0, 1.0, 0.1), {}), std::invalid_argument);
}

TEST(DriftJacobian, Example1AnalyticMatchesFiniteDifference) {
    const mgame::Example1Params p;
    const DriftModel d = mgame::example1_drift(p);
    EXPECT_NEAR(d.jacobian(scalar(1.0), 0.0)(0, 0), -14.0, 1e-12);
    DriftModel fd = d;
    fd.analytic_jacobian.reset();
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        EXPECT_NEAR(fd.jacobian(scalar(x), 0.7)(0, 0), d.jacobian(scalar(x), 0.7)(0, 0), 1e-5) << "x=" << x;
    }
    EXPECT_NEAR(fd.jacobian(scalar(1.0), 0.0)(0, 0), -14.0, 1e-5);
}

TEST(Dissipativity, LinearDecayIsDissipative) {
    const double times[] = {0.0, 1.0};
    const auto report = mgame::check_dissipativity(decay_drift(), 1.0, 1.0, times);
    EXPECT_TRUE(report.dissipative);
    EXPECT_LT(report.worst_margin, 0.0);
    EXPECT_EQ(report.probes, 2u * 4u * 2u);
}

TEST(Dissipativity, GrowthIsFlagged) {
    DriftModel d;
    d.dim = 2;
    d.eval = [](const Vector& x, double) { return Vector(Eigen::Vector2d(x(0), -x(1))); };
    const double times[] = {0.0};
    const auto report = mgame::check_dissipativity(d, 0.5, 1.0, times);
    EXPECT_FALSE(report.dissipative);
    EXPECT_GT(report.worst_margin, 0.0);
    EXPECT_NE(report.worst_point(0), 0.0);
}

TEST(Dissipativity, Example1CubicDominatesAtLargeRadius) {
    const double times[] = {0.0, 2.5, 5.0};
    const auto report = mgame::check_dissipativity(mgame::example1_drift({}), 1.0, 50.0, times);
    EXPECT_TRUE(report.dissipative);
}
