#include "mgame/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace mgame {

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf.data(), ptr);
}

std::string format_capture(const std::optional<double>& t) { return t ? format_number(*t) : "none"; }

std::string engagement_csv(const EngagementResult& result) {
    const auto& traj = result.trajectory;
    const SigmaRates rates = sigma_diagnostics(traj);
    std::string out = kEngagementHeader;
    out += '\n';
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        const std::array<double, 15> row{
            traj.times[k],          traj.states(i, kR),        traj.states(i, kVr),       traj.states(i, kZ),
            traj.states(i, kW),     rates.from_w(i),           rates.from_z(i),           traj.controls(i, kAMr),
            traj.controls(i, kAMn), traj.controls(i, kATr),    traj.controls(i, kATn),    traj.controls(i, kBeta1),
            traj.controls(i, kBeta2), traj.controls(i, kBeta3), traj.controls(i, kBeta4)};
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += format_number(row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string game_csv(const GameResult& result) {
    const auto& traj = result.trajectory;
    std::string out = kGameHeader;
    out += '\n';
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        const double x2 = traj.states.cols() > 1 ? traj.states(i, 1) : 0.0;
        out += format_number(traj.times[k]) + ',' + format_number(traj.states(i, 0)) + ',' + format_number(x2) + ',' +
               format_number(traj.controls(i, 0)) + ',' + format_number(traj.controls(i, 1)) + '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace mgame
