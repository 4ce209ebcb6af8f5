#include "mgame/engagement.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mgame {

namespace {

Horizon law_horizon(const EngagementParams& p) {
    if (p.horizon == LawHorizon::fixed) return FixedHorizon{p.t1};
    return p.tau;
}

MeasuredState true_state(const EngagementState& s) { return {s(kR), s(kVr), s(kZ), s(kW)}; }

MeasuredState add_errors(const EngagementState& s, double t, const std::array<Waveform, 4>& errors) {
    return {s(kR) + eval_waveform(errors[0], t), s(kVr) + eval_waveform(errors[1], t),
            s(kZ) + eval_waveform(errors[2], t), s(kW) + eval_waveform(errors[3], t)};
}

EngagementState closed_loop(const EngagementState& s, const EngagementCommands& cmd, double eps_reg) {
    const double R = s(kR);
    const double Vr = s(kVr);
    const double w = s(kW);
    const double denom = R + eps_reg;
    EngagementState d;
    d(kR) = Vr;
    d(kVr) = w * w / denom + cmd.missile.radial + cmd.target_r;
    d(kZ) = w;
    d(kW) = -Vr * w / denom + cmd.missile.normal + cmd.target_n;
    d(kSigma) = w / denom;
    return d;
}

void validate(const EngagementParams& p) {
    if (!(p.eps_reg > 0.0)) throw std::invalid_argument("engagement: eps_reg must be positive");
    if (p.rho_Mr < 0.0 || p.rho_Mn < 0.0 || p.rho_Tr < 0.0 || p.rho_Tn < 0.0)
        throw std::invalid_argument("engagement: bounds must be non-negative");
    if (!(p.t1 > 0.0)) throw std::invalid_argument("engagement: t1 must be positive");
    if (!(p.tau.tau > 0.0)) throw std::invalid_argument("engagement: tau must be positive");
}

}  // namespace

LawParams EngagementParams::missile_law() const { return {rho_Mr, rho_Mn, kappa1, kappa2, law_horizon(*this)}; }

LawParams EngagementParams::target_law() const { return {rho_Tr, rho_Tn, kappa1, kappa2, law_horizon(*this)}; }

MeasuredState measure(const EngagementState& s, double t, const EngagementParams& p) {
    return add_errors(s, t, p.beta);
}

EngagementCommands engagement_commands(const EngagementState& s, double t, const EngagementParams& p,
                                       Measurement mode) {
    EngagementCommands cmd;
    const MeasuredState seen = mode == Measurement::perfect ? true_state(s) : measure(s, t, p);
    cmd.missile = guidance_accels(seen, t, p.missile_law());
    if (p.target_mode == TargetMode::waveform) {
        cmd.target_r = eval_waveform(p.target_r, t);
        cmd.target_n = eval_waveform(p.target_n, t);
    } else {
        const GuidanceCommand tgt = target_accels(add_errors(s, t, p.beta_hat), t, p.target_law());
        cmd.target_r = tgt.radial;
        cmd.target_n = tgt.normal;
    }
    return cmd;
}

EngagementState rhs_perfect(const EngagementState& s, double t, const EngagementParams& p) {
    return closed_loop(s, engagement_commands(s, t, p, Measurement::perfect), p.eps_reg);
}

EngagementState rhs_imperfect(const EngagementState& s, double t, const EngagementParams& p) {
    return closed_loop(s, engagement_commands(s, t, p, Measurement::imperfect), p.eps_reg);
}

EngagementResult run_engagement(const EngagementParams& p, Measurement mode) {
    validate(p);
    const TimeGrid grid = TimeGrid::make(0.0, p.t1, p.dt);
    const EngagementState x0 = make_engagement_state(p.R0, p.Vr0, p.z0, p.w0);

    auto rhs = [&p, mode](const EngagementState& s, double t) -> EngagementState {
        return mode == Measurement::perfect ? rhs_perfect(s, t, p) : rhs_imperfect(s, t, p);
    };

    EngagementResult result;
    auto post_step = [&](std::size_t k, double t, EngagementState& x) {
        if (p.noise.enabled()) {
            x(kVr) += gaussian_increment(p.noise, k, p.dt, 0);
            x(kW) += gaussian_increment(p.noise, k, p.dt, 1);
        }
        if (p.R_stop >= 0.0 && x(kR) <= p.R_stop) {
            result.capture_time = t;
            return true;
        }
        if (x(kR) + p.eps_reg <= 0.0) {
            std::ostringstream os;
            os << "engagement: R + eps_reg <= 0 at t=" << t << " (R=" << x(kR) << ")";
            throw GeometryError(os.str());
        }
        return false;
    };

    result.trajectory = integrate_with(rhs, x0, grid, post_step);
    auto& traj = result.trajectory;
    const auto nodes = static_cast<Eigen::Index>(traj.size());
    traj.controls.resize(nodes, 10);
    for (Eigen::Index k = 0; k < nodes; ++k) {
        const EngagementState s = traj.states.row(k).transpose();
        const double t = traj.times[static_cast<std::size_t>(k)];
        const EngagementCommands cmd = engagement_commands(s, t, p, mode);
        traj.controls(k, kAMr) = cmd.missile.radial;
        traj.controls(k, kAMn) = cmd.missile.normal;
        traj.controls(k, kATr) = cmd.target_r;
        traj.controls(k, kATn) = cmd.target_n;
        for (int i = 0; i < 4; ++i) {
            traj.controls(k, kBeta1 + i) = mode == Measurement::perfect ? 0.0 : eval_waveform(p.beta[i], t);
        }
        traj.controls(k, kAMrBang) = cmd.missile.radial_bang;
        traj.controls(k, kAMnBang) = cmd.missile.normal_bang;
    }

    const double R_last = traj.states(nodes - 1, kR);
    result.miss = std::abs(R_last);
    result.payoff = terminal_payoff(traj, PayoffKind::range);
    result.payoff_rz = terminal_payoff(traj, PayoffKind::range_normal);
    result.min_range = traj.states.col(kR).minCoeff();
    return result;
}

SigmaRates sigma_diagnostics(const Trajectory<double>& traj) {
    const Eigen::VectorXd R = traj.states.col(kR);
    return {traj.states.col(kW).cwiseQuotient(R), traj.states.col(kZ).cwiseQuotient(R)};
}

}  // namespace mgame
