#include "mgame/games.hpp"

#include <cmath>
#include <stdexcept>

namespace mgame {

double rhs_example1(double x, double t, const Example1Params& p) {
    return -p.a * x * x * x - p.b * x * x - p.c * x - p.sigma * std::pow(t, p.n) -
           p.chi * std::pow(t, p.m) * std::sin(p.Omega * std::pow(t, p.k));
}

DriftModel example1_drift(const Example1Params& p) {
    DriftModel drift;
    drift.dim = 1;
    drift.params = {{"a", p.a},         {"b", p.b}, {"c", p.c}, {"sigma", p.sigma}, {"chi", p.chi},
                    {"m", p.m},         {"n", p.n}, {"Omega", p.Omega}, {"k", p.k}};
    drift.eval = [p](const Vector& x, double t) { return Vector::Constant(1, rhs_example1(x(0), t, p)); };
    drift.analytic_jacobian = [p](const Vector& x, double) {
        const double v = x(0);
        return Matrix::Constant(1, 1, -(3.0 * p.a * v * v + 2.0 * p.b * v + p.c));
    };
    return drift;
}

namespace {

double example2_player1(const GameState& s, double t, const GameScenario& sc, double rho, Player player) {
    switch (sc.horizon) {
        case LawHorizon::native:
            return law_example2(player, s(0), s(1), t, sc.T, sc.kappa, rho);
        case LawHorizon::cutting:
            return law_theta(player, s(0), s(1), t, sc.tau, rho);
        case LawHorizon::fixed: {
            const double sign = player == Player::first ? -1.0 : 1.0;
            return sign * rho * sign0(switching_surface(s(0), s(1), horizon_factor(FixedHorizon{sc.T}, t)));
        }
    }
    return 0.0;
}

double example3_law(Player player, const GameState& s, double t, const GameScenario& sc, double rho, double beta) {
    if (sc.horizon == LawHorizon::fixed) {
        const double seen = player == Player::first ? s(1) + beta : s(1);
        const double sign = player == Player::first ? -1.0 : 1.0;
        return sign * rho * sign0(switching_surface(s(0), seen, horizon_factor(FixedHorizon{sc.T}, t)));
    }
    return law_theta(player, s(0), s(1), t, sc.tau, rho, beta);
}

}  // namespace

GameControls game_controls(const GameState& s, double t, const GameScenario& sc, GameModel model) {
    GameControls u;
    switch (model) {
        case GameModel::example1:
            break;
        case GameModel::example2:
            u.alpha1 = example2_player1(s, t, sc, sc.rho1, Player::first);
            u.alpha2 = sc.opponent_mode == OpponentMode::waveform
                           ? eval_waveform(sc.opponent, t)
                           : example2_player1(s, t, sc, sc.rho2, Player::second);
            break;
        case GameModel::example3:
            u.alpha1 = example3_law(Player::first, s, t, sc, sc.rho1, eval_waveform(sc.beta, t));
            u.alpha2 = sc.opponent_mode == OpponentMode::waveform
                           ? eval_waveform(sc.opponent, t)
                           : example3_law(Player::second, s, t, sc, sc.rho2, 0.0);
            break;
        case GameModel::example3_classical: {
            const double h = sc.horizon == LawHorizon::fixed ? horizon_factor(FixedHorizon{sc.T}, t)
                                                              : theta_tau(t, sc.tau);
            const double surface = switching_surface(s(0), s(1), h);
            u.alpha1 = -sc.rho1 * sign0(surface);
            u.alpha2 = sc.opponent_mode == OpponentMode::waveform ? eval_waveform(sc.opponent, t)
                                                                  : sc.rho2 * sign0(surface);
            break;
        }
    }
    return u;
}

GameState rhs_example2(const GameState& s, double t, const GameScenario& sc) {
    const GameControls u = game_controls(s, t, sc, GameModel::example2);
    const double x2 = s(1);
    return {x2, -sc.kappa * x2 * x2 * x2 + u.alpha1 + u.alpha2};
}

GameState rhs_example3(const GameState& s, double t, const GameScenario& sc) {
    const GameControls u = game_controls(s, t, sc, GameModel::example3);
    const double x2 = s(1);
    return {x2, -sc.kappa1 * x2 * x2 * x2 + sc.kappa2 * x2 * x2 + u.alpha1 + u.alpha2};
}

GameState rhs_example3_classical(const GameState& s, double t, const GameScenario& sc) {
    const GameControls u = game_controls(s, t, sc, GameModel::example3_classical);
    const double x2 = s(1);
    return {x2, -sc.kappa1 * x2 * x2 * x2 + sc.kappa2 * x2 * x2 + u.alpha1 + u.alpha2};
}

double terminal_payoff(const Trajectory<double>& traj, PayoffKind kind) {
    if (traj.empty()) throw std::invalid_argument("terminal_payoff: empty trajectory");
    const auto last = traj.final_state();
    auto col = [&](Eigen::Index j) { return j < last.size() ? last(j) : 0.0; };
    switch (kind) {
        case PayoffKind::position_velocity:
            return col(0) * col(0) + col(1) * col(1);
        case PayoffKind::range:
            return col(0) * col(0);
        case PayoffKind::range_normal:
            return col(0) * col(0) + col(2) * col(2);
    }
    return 0.0;
}

namespace {

template <typename State, typename Rhs>
Trajectory<double> run_with_noise(Rhs&& rhs, const State& x0, const TimeGrid& grid, const NoiseChannel& noise) {
    return integrate_with(rhs, x0, grid, [&](std::size_t k, double, State& x) {
        if (noise.enabled()) x(x.size() - 1) += gaussian_increment(noise, k, grid.dt);
        return false;
    });
}

}  // namespace

GameResult run_game(const GameScenario& sc, GameModel model) {
    if (!(sc.T >= 0.0)) throw std::invalid_argument("run_game: T must be non-negative");
    if (sc.rho1 < 0.0 || sc.rho2 < 0.0) throw std::invalid_argument("run_game: bounds must be non-negative");
    const TimeGrid grid = TimeGrid::make(0.0, sc.T, sc.dt);

    GameResult result;
    if (model == GameModel::example1) {
        const Example1Params p = sc.example1;
        auto rhs = [&p](const Eigen::Matrix<double, 1, 1>& x, double t) {
            return Eigen::Matrix<double, 1, 1>(rhs_example1(x(0), t, p));
        };
        result.trajectory = run_with_noise(rhs, Eigen::Matrix<double, 1, 1>(sc.x0(0)), grid, sc.noise);
        result.trajectory.controls = Matrix::Zero(static_cast<Eigen::Index>(result.trajectory.size()), 2);
    } else {
        auto rhs = [&sc, model](const GameState& s, double t) -> GameState {
            switch (model) {
                case GameModel::example2: return rhs_example2(s, t, sc);
                case GameModel::example3: return rhs_example3(s, t, sc);
                default: return rhs_example3_classical(s, t, sc);
            }
        };
        result.trajectory = run_with_noise(rhs, sc.x0, grid, sc.noise);
        auto& traj = result.trajectory;
        traj.controls.resize(static_cast<Eigen::Index>(traj.size()), 2);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const GameState s = traj.state(k).transpose();
            const GameControls u = game_controls(s, traj.times[k], sc, model);
            traj.controls(static_cast<Eigen::Index>(k), 0) = u.alpha1;
            traj.controls(static_cast<Eigen::Index>(k), 1) = u.alpha2;
        }
    }
    result.payoff = terminal_payoff(result.trajectory, PayoffKind::position_velocity);
    result.miss = std::abs(result.trajectory.final_state()(0));
    return result;
}

}  // namespace mgame
