#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mgame/uncertainty.hpp"

using mgame::NoiseChannel;
using mgame::Waveform;

TEST(Waveform, HandValues) {
    constexpr double pi = std::numbers::pi;
    EXPECT_EQ(mgame::eval_waveform(Waveform::pow_sine(37.0, 5.0, 2), 0.0), 0.0);
    EXPECT_NEAR(mgame::eval_waveform(Waveform::pow_sine(20.0, 50.0, 2), pi / 100.0), 20.0, 1e-12);
    EXPECT_NEAR(mgame::eval_waveform(Waveform::sine(20.0, 5.0), pi / 10.0), 20.0, 1e-12);
    EXPECT_EQ(mgame::eval_waveform(Waveform::constant(-3.0), 12.0), -3.0);
    EXPECT_EQ(mgame::eval_waveform(Waveform{}, 12.0), 0.0);
}

TEST(Waveform, OddPowerKeepsSign) {
    const Waveform w = Waveform::pow_sine(20.0, 5.0, 1);
    EXPECT_LT(mgame::eval_waveform(w, 1.0), 0.0);  // sin(5) < 0
}

TEST(Waveform, PhaseShift) {
    const Waveform w = Waveform::sine(2.0, 1.0, std::numbers::pi / 2);
    EXPECT_NEAR(mgame::eval_waveform(w, 0.0), 2.0, 1e-15);
}

TEST(Waveform, NegatedFlipsEveryValue) {
    const Waveform w = Waveform::pow_sine(7.0, 3.0, 3);
    for (double t : {0.1, 0.7, 2.9}) EXPECT_EQ(mgame::eval_waveform(w.negated(), t), -mgame::eval_waveform(w, t));
}

TEST(Waveform, EvenPowerNonNegativeAndPeriodic) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int p : {2, 4}) {
        const Waveform w = Waveform::pow_sine(20.0, 50.0, p);
        const double period = std::numbers::pi / w.omega;
        for (int i = 0; i < 1000; ++i) {
            const double t = u(rng);
            const double v = mgame::eval_waveform(w, t);
            EXPECT_GE(v, 0.0);
            EXPECT_NEAR(mgame::eval_waveform(w, t + period), v, 1e-9);
        }
    }
}

TEST(Waveform, KindNamesRoundTrip) {
    for (auto k : {mgame::WaveKind::zero, mgame::WaveKind::constant, mgame::WaveKind::pow_sine,
                   mgame::WaveKind::sine}) {
        EXPECT_EQ(mgame::wave_kind_from_string(mgame::to_string(k)), k);
    }
    EXPECT_THROW(mgame::wave_kind_from_string("square"), std::invalid_argument);
}

TEST(Noise, ZeroIntensityIsSilent) {
    for (std::uint64_t seed : {0ull, 1ull, 999ull}) {
        const NoiseChannel ch{0.0, seed};
        EXPECT_FALSE(ch.enabled());
        for (std::uint64_t k = 0; k < 100; ++k) EXPECT_EQ(mgame::gaussian_increment(ch, k, 0.01), 0.0);
    }
}

TEST(Noise, PureFunctionOfInputs) {
    const NoiseChannel ch{0.5, 42};
    for (std::uint64_t k = 0; k < 1000; ++k) {
        EXPECT_EQ(mgame::gaussian_increment(ch, k, 1e-3), mgame::gaussian_increment(ch, k, 1e-3));
    }
    EXPECT_NE(mgame::gaussian_increment(ch, 5, 1e-3), mgame::gaussian_increment({0.5, 43}, 5, 1e-3));
    EXPECT_NE(mgame::gaussian_increment(ch, 5, 1e-3, 0), mgame::gaussian_increment(ch, 5, 1e-3, 1));
}

TEST(Noise, SampleMoments) {
    const NoiseChannel ch{1.0, 7};
    const double dt = 1e-2;
    const std::size_t n = 1'000'000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double v = mgame::gaussian_increment(ch, k, dt);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    EXPECT_LE(std::abs(mean), 4e-4);
    // Variance eps * dt; sample variance of 1e6 normals is within 1% at ~7 sigma.
    EXPECT_NEAR(sum_sq / static_cast<double>(n), dt, 0.01 * dt);
}
