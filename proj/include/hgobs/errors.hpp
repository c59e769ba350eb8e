#pragma once

#include <stdexcept>
#include <string>

namespace hgobs {

/// Malformed or schema-violating configuration input.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: non-convergence, singular solve, degenerate stage,
/// insufficient data for a fit.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Simulation state exceeded the divergence threshold.
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& what, double t)
        : std::runtime_error(what + " (t = " + std::to_string(t) + ")"), time(t) {}

    double time;
};

} // namespace hgobs
