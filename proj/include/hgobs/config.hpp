#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgobs/canon.hpp"
#include "hgobs/sim.hpp"

namespace hgobs::cli {

using nlohmann::json;

/// Rejects keys outside the allowed set (schema validation).
void check_keys(const json& j, const std::vector<std::string>& allowed,
                const std::string& context);

struct NoiseConfig {
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;

    sim::SinusoidSignal signal() const { return {amplitude, omega, phase}; }
    bool operator==(const NoiseConfig&) const = default;
};

struct DisturbanceConfig {
    // Per-component sinusoids; empty vectors mean no disturbance.
    std::vector<double> amplitude;
    std::vector<double> omega;
    std::vector<double> phase;

    sim::DisturbanceSignal signal() const;
    bool operator==(const DisturbanceConfig&) const = default;
};

struct SimGridConfig {
    double step = 1e-3;
    double horizon = 10.0;
    int stride = 1;
    double steady_fraction = 0.5;

    sim::SimConfig grid() const { return {step, horizon, stride, steady_fraction}; }
    bool operator==(const SimGridConfig&) const = default;
};

struct DesignGainsConfig {
    std::vector<std::array<double, 2>> roots; // (re, im); exclusive with coeffs
    std::vector<double> coeffs;               // full monic coefficient vector

    num::Polynomial target() const;
    bool operator==(const DesignGainsConfig&) const = default;
};

struct PlantConfig {
    std::string type = "linear"; // "linear" | "vdp"
    int n = 2;
    std::vector<double> phi; // linear: row Phi (empty = zero)
    double alpha = 1.0;      // vdp
    double beta = 0.5;       // vdp

    bool operator==(const PlantConfig&) const = default;
};

struct ObserverConfig {
    std::string kind = "standard"; // "standard" | "limited"
    double ell = 1.0;
    std::vector<double> gains;                    // standard: K_n, optional
    std::vector<std::array<double, 2>> ladder;    // limited: pairs, optional
    std::vector<std::array<double, 2>> target_roots; // synthesize gains when set
    std::optional<double> sat_bound;

    bool operator==(const ObserverConfig&) const = default;
};

struct SimulateConfig {
    PlantConfig plant;
    std::vector<ObserverConfig> observers;
    NoiseConfig noise;
    DisturbanceConfig disturbance;
    SimGridConfig sim;
    std::vector<double> x0;
    std::vector<std::vector<double>> observer_inits; // empty = zeros

    bool operator==(const SimulateConfig&) const = default;
};

struct SensitivityConfig {
    int n = 3;
    std::vector<double> phi;
    double ell = 10.0;
    std::vector<double> standard_gains;
    std::vector<std::array<double, 2>> standard_roots;
    std::vector<std::array<double, 2>> ladder;
    std::vector<std::array<double, 2>> new_target_roots;
    double omega_min = 1e3;
    double omega_max = 1e6;
    int omega_points = 20;

    bool operator==(const SensitivityConfig&) const = default;
};

struct VdpBenchConfig {
    double ell = 100.0;
    bool noisy = true;
    NoiseConfig noise{1e-2, 1e3, 0.0};
    double alpha = 1.0;
    double beta = 0.5;
    std::optional<SimGridConfig> sim; // defaults depend on noisy

    bool operator==(const VdpBenchConfig&) const = default;
};

void to_json(json& j, const NoiseConfig& c);
void from_json(const json& j, NoiseConfig& c);
void to_json(json& j, const DisturbanceConfig& c);
void from_json(const json& j, DisturbanceConfig& c);
void to_json(json& j, const SimGridConfig& c);
void from_json(const json& j, SimGridConfig& c);
void to_json(json& j, const DesignGainsConfig& c);
void from_json(const json& j, DesignGainsConfig& c);
void to_json(json& j, const PlantConfig& c);
void from_json(const json& j, PlantConfig& c);
void to_json(json& j, const ObserverConfig& c);
void from_json(const json& j, ObserverConfig& c);
void to_json(json& j, const SimulateConfig& c);
void from_json(const json& j, SimulateConfig& c);
void to_json(json& j, const SensitivityConfig& c);
void from_json(const json& j, SensitivityConfig& c);
void to_json(json& j, const VdpBenchConfig& c);
void from_json(const json& j, VdpBenchConfig& c);

/// Parse a config document of type T from file, mapping json/schema
/// problems to config_error.
template <typename T>
T load_config(const std::string& path);

/// Build an ObserverSpec from one observer config entry (synthesizing
/// gains from target roots when requested).
canon::ObserverSpec make_observer(const ObserverConfig& cfg, const PlantConfig& plant);

} // namespace hgobs::cli
