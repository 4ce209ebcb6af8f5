#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mgame/errors.hpp"

namespace mgame {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Uniform grid t_k = t0 + k*dt, k = 0..n_steps.
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 1e-3;
    std::size_t n_steps = 0;

    /// Builds a grid and checks that dt divides the span. A zero-length span
    /// yields a single-node grid.
    static TimeGrid make(double t0, double t1, double dt) {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("TimeGrid: dt must be positive");
        if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0)
            throw std::invalid_argument("TimeGrid: need finite t1 >= t0");
        const double span = t1 - t0;
        const double steps = std::round(span / dt);
        if (std::abs(steps * dt - span) > 1e-9 * std::max(1.0, span)) {
            std::ostringstream os;
            os << "TimeGrid: dt=" << dt << " does not divide [" << t0 << ", " << t1 << "]";
            throw std::invalid_argument(os.str());
        }
        return TimeGrid{t0, t1, dt, static_cast<std::size_t>(steps)};
    }

    double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
    std::size_t nodes() const { return n_steps + 1; }

    /// First k+1 nodes of this grid.
    TimeGrid prefix(std::size_t k) const { return TimeGrid{t0, time(k), dt, k}; }
};

/// Node times with one state row (and optionally one control row) per node.
template <typename Scalar>
struct Trajectory {
    std::vector<Scalar> times;
    MatrixX<Scalar> states;
    MatrixX<Scalar> controls;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    auto state(std::size_t k) const { return states.row(static_cast<Eigen::Index>(k)); }
    auto final_state() const { return states.row(states.rows() - 1); }
};

/// One classical fourth-order Runge-Kutta step.
template <typename State, typename Rhs>
State rk4_step(Rhs& rhs, const State& x, double t, double dt) {
    const double half = 0.5 * dt;
    const State k1 = rhs(x, t);
    const State k2 = rhs(State(x + half * k1), t + half);
    const State k3 = rhs(State(x + half * k2), t + half);
    const State k4 = rhs(State(x + dt * k3), t + dt);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

template <typename State>
void check_finite(const State& x, std::size_t step) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x(i))) {
            std::ostringstream os;
            os << "non-finite state at step " << step << ", component " << i;
            throw NumericsError(step, static_cast<std::size_t>(i), os.str());
        }
    }
}

}  // namespace detail

/// Fixed-step RK4 over `grid`. After every step `post_step(k, t_k, x_k)` may
/// adjust the new state in place; returning true stops the run at node k.
template <typename Rhs, typename Derived, typename PostStep>
Trajectory<typename Derived::Scalar> integrate_with(Rhs&& rhs, const Eigen::MatrixBase<Derived>& x0,
                                                    const TimeGrid& grid, PostStep&& post_step) {
    using Scalar = typename Derived::Scalar;
    using State = typename Derived::PlainObject;

    State x = x0;
    detail::check_finite(x, 0);

    Trajectory<Scalar> out;
    out.times.reserve(grid.nodes());
    out.states.resize(static_cast<Eigen::Index>(grid.nodes()), x.size());
    out.times.push_back(grid.time(0));
    out.states.row(0) = x.transpose();

    for (std::size_t k = 1; k <= grid.n_steps; ++k) {
        x = rk4_step<State>(rhs, x, grid.time(k - 1), grid.dt);
        const bool stop = post_step(k, grid.time(k), x);
        detail::check_finite(x, k);
        out.times.push_back(grid.time(k));
        out.states.row(static_cast<Eigen::Index>(k)) = x.transpose();
        if (stop) break;
    }
    out.states.conservativeResize(static_cast<Eigen::Index>(out.times.size()), Eigen::NoChange);
    return out;
}

template <typename Rhs, typename Derived>
Trajectory<typename Derived::Scalar> integrate(Rhs&& rhs, const Eigen::MatrixBase<Derived>& x0,
                                               const TimeGrid& grid) {
    return integrate_with(std::forward<Rhs>(rhs), x0, grid,
                          [](std::size_t, double, auto&) { return false; });
}

/// Same as integrate() but returns only the state at the last node.
template <typename Rhs, typename Derived>
typename Derived::PlainObject integrate_final(Rhs&& rhs, const Eigen::MatrixBase<Derived>& x0,
                                              const TimeGrid& grid) {
    using State = typename Derived::PlainObject;
    State x = x0;
    for (std::size_t k = 1; k <= grid.n_steps; ++k) {
        x = rk4_step<State>(rhs, x, grid.time(k - 1), grid.dt);
        detail::check_finite(x, k);
    }
    return x;
}

/// Default central-difference step for component value v.
inline double fd_step(double v) { return std::max(1e-6, 1e-6 * std::abs(v)); }

/// Central-difference Jacobian J_ij = (f_i(x + h_j e_j) - f_i(x - h_j e_j)) / (2 h_j).
/// `step(j)` supplies h_j.
template <typename F, typename Derived, typename StepFn>
MatrixX<typename Derived::Scalar> jacobian_fd(F&& f, const Eigen::MatrixBase<Derived>& x, double t,
                                              StepFn&& step) {
    using Scalar = typename Derived::Scalar;
    using State = typename Derived::PlainObject;
    const Eigen::Index n = x.size();
    MatrixX<Scalar> jac(n, n);
    State probe = x;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Scalar h = step(j);
        if (!(h > 0)) throw std::invalid_argument("jacobian_fd: step must be positive");
        const Scalar xj = probe(j);
        probe(j) = xj + h;
        const State fp = f(probe, t);
        probe(j) = xj - h;
        const State fm = f(probe, t);
        probe(j) = xj;
        if (fp.size() != n || fm.size() != n) throw std::invalid_argument("jacobian_fd: f must map R^n to R^n");
        jac.col(j) = (fp - fm) / (2 * h);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!std::isfinite(jac(i, j))) {
                std::ostringstream os;
                os << "jacobian_fd: non-finite entry (" << i << ", " << j << ")";
                throw NumericsError(0, static_cast<std::size_t>(i), os.str());
            }
        }
    }
    return jac;
}

template <typename F, typename Derived>
MatrixX<typename Derived::Scalar> jacobian_fd(F&& f, const Eigen::MatrixBase<Derived>& x, double t, double h) {
    return jacobian_fd(std::forward<F>(f), x, t, [h](Eigen::Index) { return h; });
}

template <typename F, typename Derived>
MatrixX<typename Derived::Scalar> jacobian_fd(F&& f, const Eigen::MatrixBase<Derived>& x, double t) {
    return jacobian_fd(std::forward<F>(f), x, t, [&x](Eigen::Index j) { return fd_step(x(j)); });
}

struct RootConfig {
    double abs_tol = 1e-10;
    int max_iter = 200;
    double lo = -1.0;
    double hi = 1.0;
};

/// Bracketed Newton iteration on a scalar function. Newton steps use a
/// central-difference derivative; any step leaving the current bracket is
/// replaced by bisection. Returns x with |f(x)| <= cfg.abs_tol.
template <typename F>
double root_scalar(F&& f, const RootConfig& cfg) {
    if (!(cfg.abs_tol > 0.0) || cfg.max_iter < 1) throw std::invalid_argument("root_scalar: bad config");
    if (!(cfg.lo < cfg.hi)) throw std::invalid_argument("root_scalar: bracket needs lo < hi");

    double lo = cfg.lo;
    double hi = cfg.hi;
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (std::abs(f_lo) <= cfg.abs_tol) return lo;
    if (std::abs(f_hi) <= cfg.abs_tol) return hi;
    if (!(std::signbit(f_lo) != std::signbit(f_hi))) {
        std::ostringstream os;
        os << "root_scalar: no sign change on [" << lo << ", " << hi << "]";
        throw BracketError(os.str());
    }

    double best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
    double best_res = std::min(std::abs(f_lo), std::abs(f_hi));
    double x = 0.5 * (lo + hi);

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const double fx = f(x);
        if (std::abs(fx) < best_res) {
            best_res = std::abs(fx);
            best = x;
        }
        if (std::abs(fx) <= cfg.abs_tol) return x;

        if (std::signbit(fx) == std::signbit(f_lo)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        if (std::nextafter(lo, hi) >= hi) break;

        const double h = std::max(1e-8, 1e-8 * std::abs(x));
        const double slope = (f(x + h) - f(x - h)) / (2.0 * h);
        double next = (slope != 0.0 && std::isfinite(slope)) ? x - fx / slope : lo;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }

    std::ostringstream os;
    os << "root_scalar: residual " << best_res << " above tolerance " << cfg.abs_tol << " after "
       << cfg.max_iter << " iterations";
    throw ConvergenceError(best, os.str());
}

}  // namespace mgame
