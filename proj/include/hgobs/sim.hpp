#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hgobs/canon.hpp"

namespace hgobs::sim {

/// nu(t) = amplitude * sin(omega t + phase).
struct SinusoidSignal {
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;

    double value(double t) const;
    void validate() const;
};

/// Per-component bounded disturbance added to the plant state derivative.
/// Empty components mean no disturbance.
struct DisturbanceSignal {
    std::vector<std::function<double(double)>> components;
    std::vector<double> bounds;

    static DisturbanceSignal none() { return {}; }
    bool empty() const { return components.empty(); }
};

struct SimConfig {
    double step = 1e-3;
    double horizon = 10.0;
    int stride = 1;            // keep every stride-th sample
    double steady_fraction = 0.5; // sup window for asymptotic metrics

    void validate() const;
};

/// A plant for co-simulation: its own state, a scalar measured output
/// (before noise) and a "truth" map into the n coordinates the observers
/// estimate. For prime-form plants truth is the identity.
struct PlantModel {
    int state_dim = 0;
    int truth_dim = 0;
    std::function<void(double t, const std::vector<double>&, std::vector<double>&)> rhs;
    std::function<double(const std::vector<double>&)> output;
    std::function<void(const std::vector<double>&, std::vector<double>&)> truth;
};

/// Prime-form plant xdot = A_n x + B_n phi(x) + d(t), y = x_1.
PlantModel prime_form_plant(int n, std::function<double(const std::vector<double>&)> phi,
                            DisturbanceSignal dist = DisturbanceSignal::none());

/// One extracted estimate track with its per-component errors.
struct EstimateSeries {
    std::string label;
    int dim = 0;
    std::vector<double> values; // row-major, samples x dim
    std::vector<double> errors; //估 same layout: estimate - truth
};

struct SimTrace {
    double step = 0.0;
    double steady_fraction = 0.5;
    int truth_dim = 0;
    std::vector<double> time;
    std::vector<double> truth;       // samples x truth_dim
    std::vector<double> noise;       // noise sample at each kept time
    std::vector<std::vector<double>> observer_states; // per observer, samples x dim
    std::vector<EstimateSeries> estimates;

    size_t samples() const { return time.size(); }
    double truth_at(size_t k, int i) const {
        return truth[k * static_cast<size_t>(truth_dim) + static_cast<size_t>(i)];
    }
};

/// Classical RK4 update; throws divergence_error if a stage evaluates to
/// a non-finite value.
std::vector<double> rk4_step(
    const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& f,
    const std::vector<double>& x, double t, double h);

/// Lock-step integration of the plant and all observers. The measured
/// output y = output(x) + nu is shared; nu is sampled once per step and
/// held across the RK4 stages. Aborts with divergence_error when any
/// state magnitude exceeds 1e12. The step guard h <= 0.2/(ell |lambda|max)
/// is enforced per observer, and omega_N h <= 0.5 against the noise.
SimTrace cosimulate(const PlantModel& plant, const std::vector<canon::ObserverSpec>& observers,
                    const SinusoidSignal& noise, const DisturbanceSignal& dist,
                    const std::vector<double>& x0,
                    const std::vector<std::vector<double>>& observer_inits, const SimConfig& cfg);

/// sup over the trailing steady window of |estimate_i - truth_i|.
double asymptotic_error(const SimTrace& trace, size_t series, int component);

/// max over the whole horizon of the error 2-norm of one series.
double peak_error(const SimTrace& trace, size_t series);

struct DecayFit {
    double rate;      // slope of log ||error|| vs t (negative when decaying)
    double prefactor; // exp(intercept)
    size_t samples_used;
};

/// Least-squares exponential fit of the error-norm decay over the
/// post-peak samples with norm in [1e-9, 0.1*peak]. Throws numeric_error
/// when fewer than 10 samples qualify.
DecayFit decay_fit(const SimTrace& trace, size_t series);

/// CSV export: t, truth columns, estimate columns per series, error
/// columns, trailing noise column; 17 significant digits.
void write_trace_csv(const SimTrace& trace, const std::string& path);

} // namespace hgobs::sim
