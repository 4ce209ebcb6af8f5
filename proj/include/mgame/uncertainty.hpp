#pragma once

#include <cstdint>
#include <string_view>

namespace mgame {

enum class WaveKind { zero, constant, pow_sine, sine };

/// Deterministic signal used for target maneuvers, opponent controls and
/// measurement errors.
struct Waveform {
    WaveKind kind = WaveKind::zero;
    double amp = 0.0;
    double omega = 0.0;
    int p = 1;
    double phase = 0.0;

    static Waveform pow_sine(double amp, double omega, int p, double phase = 0.0) {
        return {WaveKind::pow_sine, amp, omega, p, phase};
    }
    static Waveform sine(double amp, double omega, double phase = 0.0) {
        return {WaveKind::sine, amp, omega, 1, phase};
    }
    static Waveform constant(double amp) { return {WaveKind::constant, amp, 0.0, 1, 0.0}; }

    /// Same waveform with the amplitude negated.
    Waveform negated() const {
        Waveform w = *this;
        w.amp = -w.amp;
        return w;
    }

    bool is_zero() const { return kind == WaveKind::zero || amp == 0.0; }
};

double eval_waveform(const Waveform& w, double t);

std::string_view to_string(WaveKind kind);
/// Throws std::invalid_argument for unknown names.
WaveKind wave_kind_from_string(std::string_view name);

/// Additive Gaussian forcing of intensity epsilon. epsilon == 0 disables it.
struct NoiseChannel {
    double epsilon = 0.0;
    std::uint64_t seed = 0;

    bool enabled() const { return epsilon > 0.0; }
};

/// sqrt(epsilon * dt) * N(0, 1), a pure function of (seed, stream, step_index).
/// Different `stream` values give independent sequences for multi-channel use.
double gaussian_increment(const NoiseChannel& ch, std::uint64_t step_index, double dt, std::uint64_t stream = 0);

}  // namespace mgame
