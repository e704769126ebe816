#pragma once

#include <stdexcept>
#include <string>

namespace scatter {

// Exit-code mapping used by the CLI: ConfigError -> 1,
// ConvergenceError -> 2, IoError -> 3.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Grid cannot accommodate the requested solve (e.g. matching radius
// beyond Rmax).
struct GridError : ConvergenceError {
    explicit GridError(const std::string& msg) : ConvergenceError(msg) {}
};

// A state construction has no kinematically allowed solution.
struct InfeasibleStateError : std::runtime_error {
    explicit InfeasibleStateError(const std::string& msg) : std::runtime_error(msg) {}
};

// An input violated a documented invariant (e.g. unnormalized wavefunction).
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace scatter
