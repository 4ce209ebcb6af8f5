#include "mgame/master.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mgame {

Matrix DriftModel::jacobian(const Vector& x, double t) const {
    if (analytic_jacobian) return (*analytic_jacobian)(x, t);
    return jacobian_fd(eval, x, t);
}

std::function<Vector(const Vector&, double)> master_rhs(const DriftModel& drift, const Vector& lambda) {
    if (lambda.size() != drift.dim) {
        std::ostringstream os;
        os << "master_rhs: lambda has " << lambda.size() << " components, drift has " << drift.dim;
        throw std::invalid_argument(os.str());
    }
    if (!lambda.allFinite()) throw std::invalid_argument("master_rhs: lambda must be finite");
    return [drift, lambda](const Vector& u, double t) -> Vector {
        return drift.jacobian(lambda, t) * u + drift.eval(lambda, t);
    };
}

MasterSolution solve_master(const DriftModel& drift, const Vector& lambda, const Vector& x0, const TimeGrid& grid) {
    if (x0.size() != drift.dim) throw std::invalid_argument("solve_master: x0 dimension mismatch");
    auto rhs = master_rhs(drift, lambda);
    const Vector u0 = x0 - lambda;
    return MasterSolution{lambda, grid, integrate(rhs, u0, grid)};
}

Vector master_final(const DriftModel& drift, const Vector& lambda, const Vector& x0, const TimeGrid& grid) {
    if (x0.size() != drift.dim) throw std::invalid_argument("master_final: x0 dimension mismatch");
    auto rhs = master_rhs(drift, lambda);
    const Vector u0 = x0 - lambda;
    return integrate_final(rhs, u0, grid);
}

LambdaPath solve_lambda_path(const DriftModel& drift, double x0, const TimeGrid& grid, const RootConfig& cfg,
                             const BracketExpansion& expansion) {
    if (drift.dim != 1) throw std::invalid_argument("solve_lambda_path: only scalar drifts are supported");

    const Vector x0v = Vector::Constant(1, x0);
    LambdaPath path;
    path.times.push_back(grid.time(0));
    path.lambda.push_back(x0);
    path.residual.push_back(0.0);

    for (std::size_t k = 1; k <= grid.n_steps; ++k) {
        const TimeGrid sub = grid.prefix(k);
        auto residual = [&](double lam) {
            return master_final(drift, Vector::Constant(1, lam), x0v, sub)(0);
        };

        const double prev = path.lambda.back();
        double half = std::max(expansion.min_half_width, expansion.rel_half_width * std::abs(prev));
        std::optional<RootConfig> bracket;
        for (int e = 0; e <= expansion.max_expansions; ++e, half *= expansion.factor) {
            const double lo = prev - half;
            const double hi = prev + half;
            const double f_lo = residual(lo);
            const double f_hi = residual(hi);
            if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) continue;
            if (f_lo == 0.0 || f_hi == 0.0 || std::signbit(f_lo) != std::signbit(f_hi)) {
                RootConfig c = cfg;
                c.lo = lo;
                c.hi = hi;
                bracket = c;
                break;
            }
        }

        if (!bracket) {
            std::ostringstream os;
            os << "no sign change of U(t, lambda) around lambda=" << prev << " at t=" << grid.time(k);
            path.failed_at = k;
            path.failure = NoRootError(k, os.str()).what();
            break;
        }

        double root = 0.0;
        try {
            root = root_scalar(residual, *bracket);
        } catch (const ConvergenceError& err) {
            path.failed_at = k;
            path.failure = err.what();
            break;
        }
        path.times.push_back(grid.time(k));
        path.lambda.push_back(root);
        path.residual.push_back(std::abs(residual(root)));
    }
    return path;
}

namespace {

std::vector<Vector> probe_directions(int n) {
    std::vector<Vector> dirs;
    for (int i = 0; i < n; ++i) {
        for (double s : {1.0, -1.0}) {
            Vector d = Vector::Zero(n);
            d(i) = s;
            dirs.push_back(d);
        }
    }
    if (n >= 2 && n <= 10) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            Vector d(n);
            for (int i = 0; i < n; ++i) d(i) = ((mask >> i) & 1u) ? -scale : scale;
            dirs.push_back(d);
        }
    }
    return dirs;
}

}  // namespace

DissipativityReport check_dissipativity(const DriftModel& drift, double C, double R, std::span<const double> times,
                                        int radius_levels) {
    DissipativityReport report;
    report.worst_margin = -std::numeric_limits<double>::infinity();
    const auto dirs = probe_directions(drift.dim);
    for (double t : times) {
        double radius = R;
        for (int level = 0; level < radius_levels; ++level, radius *= 2.0) {
            for (const auto& d : dirs) {
                const Vector x = radius * d;
                const double v = x.squaredNorm();
                const double v_dot = 2.0 * x.dot(drift.eval(x, t));
                const double margin = v_dot + C * v;
                ++report.probes;
                if (margin > report.worst_margin) {
                    report.worst_margin = margin;
                    report.worst_point = x;
                    report.worst_time = t;
                }
            }
        }
    }
    report.dissipative = report.worst_margin <= 0.0;
    return report;
}

}  // namespace mgame
