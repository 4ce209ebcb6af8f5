#pragma once

#include <variant>

namespace mgame {

enum class Player { first = 1, second = 2 };

/// Period of the sawtooth time-to-go signal.
struct CuttingSpec {
    double tau = 0.01;
};

/// Fixed terminal time; the horizon factor is T - t.
struct FixedHorizon {
    double T = 0.0;
};

using Horizon = std::variant<CuttingSpec, FixedHorizon>;

/// -1, 0 or +1.
inline double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Sawtooth Theta(t) = tau - eta(t) with eta(t) = t - (ceil(t/tau) - 1) tau.
/// Range [0, tau); zero at t = 0 and at every multiple of tau.
double theta_tau(double t, const CuttingSpec& spec);

/// Theta_tau(t) for a cutting spec, max(T - t, 0) for a fixed horizon.
double horizon_factor(const Horizon& horizon, double t);

/// s = x1 + h x2.
inline double switching_surface(double x1, double x2, double h) { return x1 + h * x2; }

/// Bang-bang law for the double-integrator game with cubic drag kappa:
/// surface x1 + [(T - t) + exp(-3 kappa x2^2 (T - t))] x2, player 1 pushes
/// with -rho, player 2 with +rho.
double law_example2(Player player, double x1, double x2, double t, double T, double kappa, double rho);

/// Same structure on the sawtooth horizon. Player 1 sees x2 + beta.
double law_theta(Player player, double x1, double x2, double t, const CuttingSpec& spec, double rho,
                 double beta = 0.0);

/// Measured (or true) engagement quantities fed to a guidance law.
struct MeasuredState {
    double R = 0.0;
    double Vr = 0.0;
    double z = 0.0;
    double w = 0.0;
};

struct LawParams {
    double rho_r = 0.0;  // radial bound
    double rho_n = 0.0;  // normal bound
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    Horizon horizon = CuttingSpec{};
};

/// Commanded accelerations split into the saturated sign part and the total
/// (sign part plus the unconstrained cubic compensation).
struct GuidanceCommand {
    double radial = 0.0;
    double normal = 0.0;
    double radial_bang = 0.0;
    double normal_bang = 0.0;
};

/// Missile law: a_r = -rho_r sign(R + h Vr) - kappa1 Vr^3,
///              a_n = -rho_n sign(z + h w) - kappa2 w^3, h = horizon factor.
GuidanceCommand guidance_accels(const MeasuredState& meas, double t, const LawParams& p);

/// Adversarial target law: the missile law with +rho in place of -rho.
GuidanceCommand target_accels(const MeasuredState& meas, double t, const LawParams& p);

}  // namespace mgame
