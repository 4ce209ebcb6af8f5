#include "mgame/control.hpp"

#include <algorithm>
#include <cmath>

namespace mgame {

double theta_tau(double t, const CuttingSpec& spec) {
    const double tau = spec.tau;
    const double eta = t - (std::ceil(t / tau) - 1.0) * tau;
    const double theta = tau - eta;
    // Rounding near a period boundary can land a hair outside [0, tau).
    if (theta < 0.0 || theta >= tau) return 0.0;
    return theta;
}

double horizon_factor(const Horizon& horizon, double t) {
    if (const auto* cut = std::get_if<CuttingSpec>(&horizon)) return theta_tau(t, *cut);
    return std::max(std::get<FixedHorizon>(horizon).T - t, 0.0);
}

namespace {

double player_sign(Player player) { return player == Player::first ? -1.0 : 1.0; }

GuidanceCommand bang_plus_cubic(const MeasuredState& m, double t, const LawParams& p, double direction) {
    const double h = horizon_factor(p.horizon, t);
    GuidanceCommand cmd;
    cmd.radial_bang = direction * p.rho_r * sign0(switching_surface(m.R, m.Vr, h));
    cmd.normal_bang = direction * p.rho_n * sign0(switching_surface(m.z, m.w, h));
    cmd.radial = cmd.radial_bang - p.kappa1 * m.Vr * m.Vr * m.Vr;
    cmd.normal = cmd.normal_bang - p.kappa2 * m.w * m.w * m.w;
    return cmd;
}

}  // namespace

double law_example2(Player player, double x1, double x2, double t, double T, double kappa, double rho) {
    const double to_go = T - t;
    const double h = to_go + std::exp(-3.0 * kappa * x2 * x2 * to_go);
    return player_sign(player) * rho * sign0(switching_surface(x1, x2, h));
}

double law_theta(Player player, double x1, double x2, double t, const CuttingSpec& spec, double rho, double beta) {
    const double seen = player == Player::first ? x2 + beta : x2;
    return player_sign(player) * rho * sign0(switching_surface(x1, seen, theta_tau(t, spec)));
}

GuidanceCommand guidance_accels(const MeasuredState& meas, double t, const LawParams& p) {
    return bang_plus_cubic(meas, t, p, -1.0);
}

GuidanceCommand target_accels(const MeasuredState& meas, double t, const LawParams& p) {
    return bang_plus_cubic(meas, t, p, 1.0);
}

}  // namespace mgame
