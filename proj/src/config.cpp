#include "hgobs/config.hpp"

#include <cmath>
#include <fstream>

#include "hgobs/errors.hpp"
#include "hgobs/gainsynth.hpp"
#include "hgobs/vdp.hpp"

namespace hgobs::cli {

void check_keys(const json& j, const std::vector<std::string>& allowed,
                const std::string& context) {
    if (!j.is_object()) throw config_error(context + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const auto& a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok) throw config_error(context + ": unknown key '" + key + "'");
    }
}

namespace {

std::vector<std::array<double, 2>> pairs_from(const json& j, const std::string& context) {
    std::vector<std::array<double, 2>> out;
    if (!j.is_array()) throw config_error(context + ": expected an array of pairs");
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw config_error(context + ": each entry must be a 2-element array");
        out.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return out;
}

json pairs_to(const std::vector<std::array<double, 2>>& pairs) {
    json j = json::array();
    for (const auto& p : pairs) j.push_back({p[0], p[1]});
    return j;
}

num::ComplexList roots_of(const std::vector<std::array<double, 2>>& pairs) {
    num::ComplexList roots;
    for (const auto& p : pairs) roots.emplace_back(p[0], p[1]);
    return roots;
}

} // namespace

sim::DisturbanceSignal DisturbanceConfig::signal() const {
    sim::DisturbanceSignal d;
    if (amplitude.empty()) return d;
    for (size_t i = 0; i < amplitude.size(); ++i) {
        const double a = amplitude[i];
        const double w = i < omega.size() ? omega[i] : 0.0;
        const double f = i < phase.size() ? phase[i] : 0.0;
        if (a == 0.0)
            d.components.emplace_back();
        else
            d.components.emplace_back([a, w, f](double t) { return a * std::sin(w * t + f); });
        d.bounds.push_back(std::fabs(a));
    }
    return d;
}

num::Polynomial DesignGainsConfig::target() const {
    if (!roots.empty() && !coeffs.empty())
        throw config_error("design-gains: give either roots or coeffs, not both");
    if (!roots.empty()) return num::poly_from_roots(roots_of(roots));
    if (!coeffs.empty()) return num::Polynomial(coeffs);
    throw config_error("design-gains: needs roots or coeffs");
}

void to_json(json& j, const NoiseConfig& c) {
    j = json{{"amplitude", c.amplitude}, {"omega", c.omega}, {"phase", c.phase}};
}

void from_json(const json& j, NoiseConfig& c) {
    check_keys(j, {"amplitude", "omega", "phase"}, "noise");
    c.amplitude = j.value("amplitude", 0.0);
    c.omega = j.value("omega", 0.0);
    c.phase = j.value("phase", 0.0);
}

void to_json(json& j, const DisturbanceConfig& c) {
    j = json{{"amplitude", c.amplitude}, {"omega", c.omega}, {"phase", c.phase}};
}

void from_json(const json& j, DisturbanceConfig& c) {
    check_keys(j, {"amplitude", "omega", "phase"}, "disturbance");
    c.amplitude = j.value("amplitude", std::vector<double>{});
    c.omega = j.value("omega", std::vector<double>{});
    c.phase = j.value("phase", std::vector<double>{});
}

void to_json(json& j, const SimGridConfig& c) {
    j = json{{"step", c.step},
             {"horizon", c.horizon},
             {"stride", c.stride},
             {"steady_fraction", c.steady_fraction}};
}

void from_json(const json& j, SimGridConfig& c) {
    check_keys(j, {"step", "horizon", "stride", "steady_fraction"}, "sim");
    c.step = j.value("step", 1e-3);
    c.horizon = j.value("horizon", 10.0);
    c.stride = j.value("stride", 1);
    c.steady_fraction = j.value("steady_fraction", 0.5);
}

void to_json(json& j, const DesignGainsConfig& c) {
    j = json::object();
    if (!c.roots.empty()) j["roots"] = pairs_to(c.roots);
    if (!c.coeffs.empty()) j["coeffs"] = c.coeffs;
}

void from_json(const json& j, DesignGainsConfig& c) {
    check_keys(j, {"roots", "coeffs"}, "design-gains");
    if (j.contains("roots")) c.roots = pairs_from(j["roots"], "design-gains.roots");
    c.coeffs = j.value("coeffs", std::vector<double>{});
}

void to_json(json& j, const PlantConfig& c) {
    j = json{{"type", c.type}};
    if (c.type == "linear") {
        j["n"] = c.n;
        j["phi"] = c.phi;
    } else {
        j["alpha"] = c.alpha;
        j["beta"] = c.beta;
    }
}

void from_json(const json& j, PlantConfig& c) {
    check_keys(j, {"type", "n", "phi", "alpha", "beta"}, "plant");
    c.type = j.value("type", std::string("linear"));
    if (c.type != "linear" && c.type != "vdp")
        throw config_error("plant.type must be 'linear' or 'vdp'");
    if (c.type == "vdp") {
        c.n = 5;
        c.alpha = j.value("alpha", 1.0);
        c.beta = j.value("beta", 0.5);
    } else {
        if (!j.contains("n")) throw config_error("plant: linear plant needs n");
        c.n = j["n"].get<int>();
        c.phi = j.value("phi", std::vector<double>{});
        if (!c.phi.empty() && static_cast<int>(c.phi.size()) != c.n)
            throw config_error("plant.phi must have length n");
    }
}

void to_json(json& j, const ObserverConfig& c) {
    j = json{{"kind", c.kind}, {"ell", c.ell}};
    if (!c.gains.empty()) j["gains"] = c.gains;
    if (!c.ladder.empty()) j["ladder"] = pairs_to(c.ladder);
    if (!c.target_roots.empty()) j["target_roots"] = pairs_to(c.target_roots);
    if (c.sat_bound) j["sat_bound"] = *c.sat_bound;
}

void from_json(const json& j, ObserverConfig& c) {
    check_keys(j, {"kind", "ell", "gains", "ladder", "target_roots", "sat_bound"}, "observer");
    c.kind = j.value("kind", std::string("standard"));
    if (c.kind != "standard" && c.kind != "limited")
        throw config_error("observer.kind must be 'standard' or 'limited'");
    c.ell = j.value("ell", 1.0);
    c.gains = j.value("gains", std::vector<double>{});
    if (j.contains("ladder")) c.ladder = pairs_from(j["ladder"], "observer.ladder");
    if (j.contains("target_roots"))
        c.target_roots = pairs_from(j["target_roots"], "observer.target_roots");
    if (j.contains("sat_bound")) c.sat_bound = j["sat_bound"].get<double>();
}

void to_json(json& j, const SimulateConfig& c) {
    j = json{{"plant", c.plant},   {"observers", c.observers}, {"noise", c.noise},
             {"disturbance", c.disturbance}, {"sim", c.sim},   {"x0", c.x0},
             {"observer_inits", c.observer_inits}};
}

void from_json(const json& j, SimulateConfig& c) {
    check_keys(j, {"plant", "observers", "noise", "disturbance", "sim", "x0", "observer_inits"},
               "simulate");
    if (!j.contains("plant")) throw config_error("simulate: plant required");
    c.plant = j["plant"].get<PlantConfig>();
    if (!j.contains("observers") || !j["observers"].is_array() || j["observers"].empty())
        throw config_error("simulate: at least one observer required");
    c.observers = j["observers"].get<std::vector<ObserverConfig>>();
    if (j.contains("noise")) c.noise = j["noise"].get<NoiseConfig>();
    if (j.contains("disturbance")) c.disturbance = j["disturbance"].get<DisturbanceConfig>();
    if (j.contains("sim")) c.sim = j["sim"].get<SimGridConfig>();
    c.x0 = j.value("x0", std::vector<double>{});
    c.observer_inits = j.value("observer_inits", std::vector<std::vector<double>>{});
}

void to_json(json& j, const SensitivityConfig& c) {
    j = json{{"n", c.n},
             {"phi", c.phi},
             {"ell", c.ell},
             {"omega_min", c.omega_min},
             {"omega_max", c.omega_max},
             {"omega_points", c.omega_points}};
    if (!c.standard_gains.empty()) j["standard_gains"] = c.standard_gains;
    if (!c.standard_roots.empty()) j["standard_roots"] = pairs_to(c.standard_roots);
    if (!c.ladder.empty()) j["ladder"] = pairs_to(c.ladder);
    if (!c.new_target_roots.empty()) j["new_target_roots"] = pairs_to(c.new_target_roots);
}

void from_json(const json& j, SensitivityConfig& c) {
    check_keys(j,
               {"n", "phi", "ell", "standard_gains", "standard_roots", "ladder",
                "new_target_roots", "omega_min", "omega_max", "omega_points"},
               "sensitivity");
    if (!j.contains("n")) throw config_error("sensitivity: n required");
    c.n = j["n"].get<int>();
    c.phi = j.value("phi", std::vector<double>{});
    c.ell = j.value("ell", 10.0);
    c.standard_gains = j.value("standard_gains", std::vector<double>{});
    if (j.contains("standard_roots"))
        c.standard_roots = pairs_from(j["standard_roots"], "sensitivity.standard_roots");
    if (j.contains("ladder")) c.ladder = pairs_from(j["ladder"], "sensitivity.ladder");
    if (j.contains("new_target_roots"))
        c.new_target_roots = pairs_from(j["new_target_roots"], "sensitivity.new_target_roots");
    c.omega_min = j.value("omega_min", 1e3);
    c.omega_max = j.value("omega_max", 1e6);
    c.omega_points = j.value("omega_points", 20);
}

void to_json(json& j, const VdpBenchConfig& c) {
    j = json{{"ell", c.ell},     {"noisy", c.noisy}, {"noise", c.noise},
             {"alpha", c.alpha}, {"beta", c.beta}};
    if (c.sim) j["sim"] = *c.sim;
}

void from_json(const json& j, VdpBenchConfig& c) {
    check_keys(j, {"ell", "noisy", "noise", "alpha", "beta", "sim"}, "vdp-bench");
    c.ell = j.value("ell", 100.0);
    c.noisy = j.value("noisy", true);
    if (j.contains("noise")) c.noise = j["noise"].get<NoiseConfig>();
    c.alpha = j.value("alpha", 1.0);
    c.beta = j.value("beta", 0.5);
    if (j.contains("sim")) c.sim = j["sim"].get<SimGridConfig>();
}

template <typename T>
T load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error("config parse error in " + path + ": " + e.what());
    }
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw config_error("config schema error in " + path + ": " + e.what());
    }
}

template DesignGainsConfig load_config<DesignGainsConfig>(const std::string&);
template SimulateConfig load_config<SimulateConfig>(const std::string&);
template SensitivityConfig load_config<SensitivityConfig>(const std::string&);
template VdpBenchConfig load_config<VdpBenchConfig>(const std::string&);

canon::ObserverSpec make_observer(const ObserverConfig& cfg, const PlantConfig& plant) {
    canon::ObserverSpec spec;
    spec.n = plant.n;
    spec.ell = cfg.ell;
    if (cfg.kind == "standard") {
        spec.kind = canon::ObserverKind::standard;
        if (!cfg.gains.empty()) {
            spec.gains = cfg.gains;
        } else if (!cfg.target_roots.empty()) {
            // K_n from the target characteristic polynomial of A - K C,
            // whose coefficients are exactly the gain entries.
            num::ComplexList roots;
            for (const auto& p : cfg.target_roots) roots.emplace_back(p[0], p[1]);
            spec.gains = num::poly_from_roots(roots).tail();
        } else {
            throw config_error("observer: standard kind needs gains or target_roots");
        }
    } else {
        spec.kind = canon::ObserverKind::limited_power;
        if (!cfg.ladder.empty()) {
            spec.ladder.n = plant.n;
            for (const auto& p : cfg.ladder) spec.ladder.pairs.emplace_back(p[0], p[1]);
        } else if (!cfg.target_roots.empty()) {
            num::ComplexList roots;
            for (const auto& p : cfg.target_roots) roots.emplace_back(p[0], p[1]);
            spec.ladder = gains::assign_gains(num::poly_from_roots(roots)).ladder;
        } else {
            throw config_error("observer: limited kind needs ladder or target_roots");
        }
    }
    if (plant.type == "vdp") {
        spec.phi = vdp::phi5_handle();
        spec.sat_bound =
            cfg.sat_bound ? *cfg.sat_bound
                          : vdp::reference_sat_bound(vdp::VdpParams{plant.alpha, plant.beta});
    } else {
        if (!plant.phi.empty()) {
            const std::vector<double> row = plant.phi;
            spec.phi = [row](const std::vector<double>& x) {
                double acc = 0.0;
                for (size_t i = 0; i < row.size(); ++i) acc += row[i] * x[i];
                return acc;
            };
        }
        spec.sat_bound = cfg.sat_bound ? *cfg.sat_bound : 1e9;
    }
    return spec;
}

} // namespace hgobs::cli
