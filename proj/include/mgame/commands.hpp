#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitRuntime = 3;

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

/// Simulates one scenario, writes its CSV and prints miss/payoff/capture_time.
int cmd_run(const std::filesystem::path& scenario, const std::filesystem::path& out_csv, Streams io);

/// lambda(t) from the master equation next to the direct ODE solution (example1 only).
int cmd_master(const std::filesystem::path& scenario, const std::filesystem::path& out_csv, Streams io);

/// One summary row per value of `key`, in input order. `threads` == 0 picks a default.
int cmd_sweep(const std::filesystem::path& scenario, const std::string& key, const std::vector<std::string>& values,
              const std::filesystem::path& out_csv, unsigned threads, Streams io);

/// Sawtooth-horizon law against the fixed-horizon law h = t1 - t on the same scenario.
int cmd_compare(const std::filesystem::path& scenario, const std::filesystem::path& out_csv, Streams io);

/// Worker count from SIM_THREADS, else the hardware concurrency.
unsigned sweep_threads_from_env();

/// `sim` entry point.
int run_cli(int argc, char** argv, Streams io);

}  // namespace mgame::cli
