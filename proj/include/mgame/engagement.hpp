#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>

#include "mgame/control.hpp"
#include "mgame/games.hpp"
#include "mgame/numerics.hpp"
#include "mgame/uncertainty.hpp"

namespace mgame {

/// Planar engagement state (R, Vr, z, w, sigma): range, range rate, normal
/// displacement, its rate w = R sigma', and the integrated LOS angle.
using EngagementState = Eigen::Matrix<double, 5, 1>;

enum EngagementIndex : Eigen::Index { kR = 0, kVr = 1, kZ = 2, kW = 3, kSigma = 4 };

inline EngagementState make_engagement_state(double R, double Vr, double z, double w, double sigma = 0.0) {
    EngagementState s;
    s << R, Vr, z, w, sigma;
    return s;
}

enum class Measurement { perfect, imperfect };
enum class TargetMode { waveform, feedback };

struct EngagementParams {
    double R0 = 200.0;
    double Vr0 = 10.0;
    double z0 = 0.0;
    double w0 = 0.0;

    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double rho_Mr = 20.0;
    double rho_Mn = 20.0;
    double rho_Tr = 20.0;
    double rho_Tn = 20.0;

    double eps_reg = 1e-6;
    CuttingSpec tau{0.01};
    LawHorizon horizon = LawHorizon::native;  // native == cutting
    double t1 = 10.0;
    double dt = 1e-3;
    /// Capture radius; a negative value disables the early stop.
    double R_stop = 1e-3;

    Waveform target_r;
    Waveform target_n;
    TargetMode target_mode = TargetMode::waveform;
    std::array<Waveform, 4> beta{};      // missile measurement errors on (R, Vr, z, w)
    std::array<Waveform, 4> beta_hat{};  // target measurement errors, feedback mode only
    NoiseChannel noise;

    LawParams missile_law() const;
    LawParams target_law() const;
};

/// Adds beta_1..beta_4 at time t to (R, Vr, z, w).
MeasuredState measure(const EngagementState& s, double t, const EngagementParams& p);

struct EngagementCommands {
    GuidanceCommand missile;
    double target_r = 0.0;
    double target_n = 0.0;
};

/// Missile and target accelerations at (s, t); the missile law sees the true
/// state in perfect mode and measure(s, t, p) otherwise.
EngagementCommands engagement_commands(const EngagementState& s, double t, const EngagementParams& p,
                                       Measurement mode);

/// Closed loop with guidance on the true state.
EngagementState rhs_perfect(const EngagementState& s, double t, const EngagementParams& p);

/// Closed loop with guidance on measured values.
EngagementState rhs_imperfect(const EngagementState& s, double t, const EngagementParams& p);

/// Control columns recorded by run_engagement.
enum ControlIndex : Eigen::Index {
    kAMr = 0, kAMn = 1, kATr = 2, kATn = 3, kBeta1 = 4, kBeta2 = 5, kBeta3 = 6, kBeta4 = 7,
    kAMrBang = 8, kAMnBang = 9,
};

struct EngagementResult {
    Trajectory<double> trajectory;
    double miss = 0.0;        // |R| at capture, else R(t1)
    double payoff = 0.0;      // R^2 at the last node
    double payoff_rz = 0.0;   // R^2 + z^2 at the last node
    double min_range = 0.0;   // smallest R over all nodes
    std::optional<double> capture_time;
};

EngagementResult run_engagement(const EngagementParams& p, Measurement mode);

struct SigmaRates {
    Eigen::VectorXd from_w;  // w / R
    Eigen::VectorXd from_z;  // z / R
};

SigmaRates sigma_diagnostics(const Trajectory<double>& traj);

}  // namespace mgame
