#pragma once

// Command implementations behind the gaincons executable.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "gaincons/dynamics.hpp"

namespace gaincons::cli {

namespace exit_code {
inline constexpr int kBalanced = 0;
inline constexpr int kUnbalanced = 1;
inline constexpr int kError = 2;
inline constexpr int kOk = 0;
inline constexpr int kCounterexample = 1;
inline constexpr int kMixed = 3;
inline constexpr int kNotConnected = 4;
inline constexpr int kAllConsensus = 0;
inline constexpr int kAllZero = 1;
inline constexpr int kOtherOutcome = 3;
}  // namespace exit_code

struct RunConfig {
    std::string command;
    std::filesystem::path input;
    std::optional<std::size_t> q;
    std::optional<std::size_t> p;
    std::optional<std::size_t> p_max;
    Tolerances tolerances;
    std::optional<std::size_t> steps;  // T
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::size_t threads = 0;  // 0: hardware concurrency
    bool write_traces = true;
    std::optional<std::filesystem::path> out_dir;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

int cmd_check_balance(const RunConfig& cfg, std::ostream& out);
int cmd_lift(const RunConfig& cfg, std::ostream& out);
int cmd_classify_sequence(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);

/// Standard-normal real and imaginary parts from (seed, trial).
StateVector random_initial_state(int n, std::uint64_t seed, std::size_t trial);

/// Parses argv, dispatches, and maps failures to exit code 2.
int run(int argc, char** argv);

}  // namespace gaincons::cli
