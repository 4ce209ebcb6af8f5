#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgame/numerics.hpp"

namespace mgame {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Right-hand side b(x, t) of a nonlinear drift, with an optional closed-form Jacobian.
struct DriftModel {
    using Eval = std::function<Vector(const Vector&, double)>;
    using Jacobian = std::function<Matrix(const Vector&, double)>;

    int dim = 1;
    std::map<std::string, double> params;
    Eval eval;
    std::optional<Jacobian> analytic_jacobian;

    /// Analytic Jacobian when available, central differences otherwise.
    Matrix jacobian(const Vector& x, double t) const;
};

/// U(t, lambda) on a grid, the solution of the linear master equation.
struct MasterSolution {
    Vector lambda;
    TimeGrid grid;
    Trajectory<double> U;
};

/// Affine right-hand side (U, t) -> J[b(lambda, t)] U + b(lambda, t).
std::function<Vector(const Vector&, double)> master_rhs(const DriftModel& drift, const Vector& lambda);

/// Integrates the master equation from U(t0) = x0 - lambda.
MasterSolution solve_master(const DriftModel& drift, const Vector& lambda, const Vector& x0, const TimeGrid& grid);

/// U at the last node of `grid` only.
Vector master_final(const DriftModel& drift, const Vector& lambda, const Vector& x0, const TimeGrid& grid);

struct LambdaPath {
    std::vector<double> times;
    std::vector<double> lambda;    // lambda(t_k) for the nodes solved so far
    std::vector<double> residual;  // |U(t_k, lambda(t_k))|
    /// First node where no bracket was found; the path stops before it.
    std::optional<std::size_t> failed_at;
    std::string failure;

    bool complete() const { return !failed_at.has_value(); }
};

struct BracketExpansion {
    double factor = 2.0;
    double min_half_width = 0.1;
    double rel_half_width = 0.1;
    int max_expansions = 40;
};

/// Trajectory estimate lambda(t) from U(t, lambda(t)) = 0, scalar drifts only.
/// Each node is warm-started from the previous root, with lambda(t0) = x0.
/// `cfg.lo`/`cfg.hi` are ignored; brackets come from `expansion`.
LambdaPath solve_lambda_path(const DriftModel& drift, double x0, const TimeGrid& grid, const RootConfig& cfg,
                             const BracketExpansion& expansion = {});

struct DissipativityReport {
    bool dissipative = true;
    /// Largest value of dV/dt + C V over the probes; <= 0 means the bound held everywhere.
    double worst_margin = 0.0;
    Vector worst_point;
    double worst_time = 0.0;
    std::size_t probes = 0;
};

/// Checks dV/dt <= -C V for V(x) = |x|^2 on spheres of radius >= R.
/// Probe directions are the signed coordinate axes and the 2^n diagonals
/// (diagonals only for n <= 10); radii are R * (1, 2, 4, ...).
DissipativityReport check_dissipativity(const DriftModel& drift, double C, double R, std::span<const double> times,
                                        int radius_levels = 4);

}  // namespace mgame
