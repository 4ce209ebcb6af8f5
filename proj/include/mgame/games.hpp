#pragma once

#include <Eigen/Dense>

#include "mgame/control.hpp"
#include "mgame/master.hpp"
#include "mgame/numerics.hpp"
#include "mgame/uncertainty.hpp"

namespace mgame {

/// Scalar test drift -a x^3 - b x^2 - c x - sigma t^n - chi t^m sin(Omega t^k).
struct Example1Params {
    double a = 1.0;
    double b = 5.0;
    double c = 1.0;
    double sigma = -2.0;
    double chi = -2.0;
    double m = 2.0;
    double n = 2.0;
    double Omega = 1.0;
    double k = 1.0;
};

double rhs_example1(double x, double t, const Example1Params& p);

/// rhs_example1 as a DriftModel with its closed-form Jacobian -(3a x^2 + 2b x + c).
DriftModel example1_drift(const Example1Params& p);

using GameState = Eigen::Vector2d;  // (x1, x2)

enum class GameModel { example1, example2, example3, example3_classical };

enum class OpponentMode { waveform, feedback };

/// Which time-to-go factor player 1 (and a feedback player 2) uses.
/// `native` is the model's own law: (T - t) + exp(...) for example2 and the
/// sawtooth for example3.
enum class LawHorizon { native, cutting, fixed };

struct GameScenario {
    double kappa = 1.0;   // example2 drag
    double kappa1 = 0.0;  // example3 cubic drag
    double kappa2 = 0.0;  // example3 quadratic term
    double rho1 = 0.0;
    double rho2 = 0.0;
    double T = 1.0;
    double dt = 1e-3;
    GameState x0 = GameState::Zero();
    Waveform opponent;
    OpponentMode opponent_mode = OpponentMode::waveform;
    Waveform beta;  // example3 error on the velocity seen by player 1
    CuttingSpec tau{0.01};
    LawHorizon horizon = LawHorizon::native;
    NoiseChannel noise;
    Example1Params example1;
};

struct GameControls {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

/// Controls both players apply at (s, t).
GameControls game_controls(const GameState& s, double t, const GameScenario& sc, GameModel model);

/// x1' = x2, x2' = -kappa x2^3 + alpha1 + alpha2.
GameState rhs_example2(const GameState& s, double t, const GameScenario& sc);

/// x1' = x2, x2' = -kappa1 x2^3 + kappa2 x2^2 + alpha1 + alpha2, player 1 seeing x2 + beta(t).
GameState rhs_example3(const GameState& s, double t, const GameScenario& sc);

/// rhs_example3 with perfect measurements, coded without the beta channel.
GameState rhs_example3_classical(const GameState& s, double t, const GameScenario& sc);

enum class PayoffKind {
    position_velocity,  // x1^2 + x2^2 on columns 0 and 1
    range,              // R^2 on column 0
    range_normal,       // R^2 + z^2 on columns 0 and 2
};

double terminal_payoff(const Trajectory<double>& traj, PayoffKind kind);

struct GameResult {
    Trajectory<double> trajectory;  // states (x1, x2) or (x) for example1; controls (alpha1, alpha2)
    double payoff = 0.0;
    double miss = 0.0;  // |x1(T)|
};

GameResult run_game(const GameScenario& sc, GameModel model);

}  // namespace mgame
