#include "mgame/uncertainty.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mgame {

double eval_waveform(const Waveform& w, double t) {
    switch (w.kind) {
        case WaveKind::zero:
            return 0.0;
        case WaveKind::constant:
            return w.amp;
        case WaveKind::sine:
            return w.amp * std::sin(w.omega * t + w.phase);
        case WaveKind::pow_sine: {
            const double s = std::sin(w.omega * t + w.phase);
            double v = 1.0;
            for (int i = 0; i < w.p; ++i) v *= s;
            return w.amp * v;
        }
    }
    return 0.0;
}

std::string_view to_string(WaveKind kind) {
    switch (kind) {
        case WaveKind::zero: return "zero";
        case WaveKind::constant: return "constant";
        case WaveKind::pow_sine: return "pow_sine";
        case WaveKind::sine: return "sine";
    }
    return "zero";
}

WaveKind wave_kind_from_string(std::string_view name) {
    if (name == "zero") return WaveKind::zero;
    if (name == "constant") return WaveKind::constant;
    if (name == "pow_sine") return WaveKind::pow_sine;
    if (name == "sine") return WaveKind::sine;
    throw std::invalid_argument("unknown waveform kind '" + std::string(name) + "'");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in (0, 1) from the top 53 bits.
double to_open_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double gaussian_increment(const NoiseChannel& ch, std::uint64_t step_index, double dt, std::uint64_t stream) {
    if (!ch.enabled()) return 0.0;
    const std::uint64_t key = splitmix64(ch.seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    const std::uint64_t a = splitmix64(key ^ splitmix64(2 * step_index));
    const std::uint64_t b = splitmix64(key ^ splitmix64(2 * step_index + 1));
    // Box-Muller, cosine branch only.
    const double u1 = to_open_unit(a);
    const double u2 = to_open_unit(b);
    const double normal = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return std::sqrt(ch.epsilon * dt) * normal;
}

}  // namespace mgame
