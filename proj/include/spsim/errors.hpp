#pragma once

#include <stdexcept>
#include <string>

namespace spsim {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Integration blew up: trace drift or state norm beyond safe bounds,
/// usually a sign that dt is too large for the chosen rates.
struct StepUnstable : std::runtime_error {
    explicit StepUnstable(const std::string& what) : std::runtime_error(what) {}
};

/// A measurement record was requested but eta*gamma = 0.
struct DegenerateNoise : std::runtime_error {
    explicit DegenerateNoise(const std::string& what) : std::runtime_error(what) {}
};

/// Residual population outside the pumping-off final states at readout.
struct TailNotConverged : std::runtime_error {
    explicit TailNotConverged(const std::string& what) : std::runtime_error(what) {}
};

struct NoFeasibleTime : std::runtime_error {
    explicit NoFeasibleTime(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spsim
