#include "hgobs/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hgobs/errors.hpp"

namespace hgobs::sim {

double SinusoidSignal::value(double t) const { return amplitude * std::sin(omega * t + phase); }

void SinusoidSignal::validate() const {
    if (amplitude < 0.0 || omega < 0.0 || !std::isfinite(amplitude) || !std::isfinite(omega) ||
        !std::isfinite(phase))
        throw std::invalid_argument("SinusoidSignal: invalid parameters");
}

void SimConfig::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("SimConfig: step must be > 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("SimConfig: horizon must be > 0");
    if (stride < 1) throw std::invalid_argument("SimConfig: stride must be >= 1");
    if (!(steady_fraction > 0.0 && steady_fraction < 1.0))
        throw std::invalid_argument("SimConfig: steady_fraction must be in (0,1)");
}

PlantModel prime_form_plant(int n, std::function<double(const std::vector<double>&)> phi,
                            DisturbanceSignal dist) {
    if (n < 1) throw std::invalid_argument("prime_form_plant: n must be >= 1");
    if (!dist.empty() && static_cast<int>(dist.components.size()) != n)
        throw std::invalid_argument("prime_form_plant: disturbance dimension mismatch");
    PlantModel plant;
    plant.state_dim = n;
    plant.truth_dim = n;
    plant.rhs = [n, phi = std::move(phi), dist = std::move(dist)](
                    double t, const std::vector<double>& x, std::vector<double>& dx) {
        for (int i = 0; i + 1 < n; ++i) dx[static_cast<size_t>(i)] = x[static_cast<size_t>(i + 1)];
        dx[static_cast<size_t>(n - 1)] = phi ? phi(x) : 0.0;
        if (!dist.empty())
            for (int i = 0; i < n; ++i)
                if (dist.components[static_cast<size_t>(i)])
                    dx[static_cast<size_t>(i)] += dist.components[static_cast<size_t>(i)](t);
    };
    plant.output = [](const std::vector<double>& x) { return x[0]; };
    plant.truth = [](const std::vector<double>& x, std::vector<double>& tr) { tr = x; };
    return plant;
}

std::vector<double> rk4_step(
    const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& f,
    const std::vector<double>& x, double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("rk4_step: h must be > 0");
    const size_t n = x.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    auto check = [t](const std::vector<double>& v) {
        for (double e : v)
            if (!std::isfinite(e)) throw divergence_error("rk4_step: non-finite stage value", t);
    };
    f(t, x, k1);
    check(k1);
    for (size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    f(t + 0.5 * h, tmp, k2);
    check(k2);
    for (size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    f(t + 0.5 * h, tmp, k3);
    check(k3);
    for (size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    f(t + h, tmp, k4);
    check(k4);
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i)
        out[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

namespace {

double max_target_eig_magnitude(const canon::ObserverSpec& spec) {
    num::Matrix err_matrix(0, 0);
    if (spec.kind == canon::ObserverKind::standard) {
        const canon::PrimeTriplet pf = canon::prime_triplet(spec.n);
        err_matrix = pf.a - num::Matrix::column(spec.gains) * pf.c;
    } else {
        err_matrix = canon::build_M(spec.ladder);
    }
    double m = 0.0;
    for (const num::Complex& ev : num::eigvals(err_matrix)) m = std::max(m, std::abs(ev));
    return m;
}

} // namespace

SimTrace cosimulate(const PlantModel& plant, const std::vector<canon::ObserverSpec>& observers,
                    const SinusoidSignal& noise, const DisturbanceSignal& dist,
                    const std::vector<double>& x0,
                    const std::vector<std::vector<double>>& observer_inits, const SimConfig& cfg) {
    cfg.validate();
    noise.validate();
    if (static_cast<int>(x0.size()) != plant.state_dim)
        throw std::invalid_argument("cosimulate: x0 dimension mismatch");
    if (observer_inits.size() != observers.size())
        throw std::invalid_argument("cosimulate: one init per observer required");
    if (!dist.empty() && static_cast<int>(dist.components.size()) != plant.state_dim)
        throw std::invalid_argument("cosimulate: disturbance dimension mismatch");
    for (const auto& spec : observers) {
        spec.validate();
        if (spec.n != plant.truth_dim)
            throw std::invalid_argument("cosimulate: observer/plant dimension mismatch");
    }
    // Stability guard on the step: error eigenvalues scale with ell.
    for (size_t i = 0; i < observers.size(); ++i) {
        const double lam = max_target_eig_magnitude(observers[i]);
        if (lam > 0.0 && cfg.step > 0.2 / (observers[i].ell * lam))
            throw config_error("cosimulate: step exceeds stability guard 0.2/(ell*|lambda|max)");
        if (static_cast<int>(observer_inits[i].size()) != observers[i].state_dim())
            throw std::invalid_argument("cosimulate: observer init dimension mismatch");
    }
    if (noise.omega * cfg.step > 0.5)
        throw config_error("cosimulate: omega_N * h exceeds 0.5, noise would alias");

    const int np = plant.state_dim;
    const size_t total_dim_p = static_cast<size_t>(np);
    size_t total = total_dim_p;
    std::vector<size_t> obs_offset(observers.size());
    for (size_t i = 0; i < observers.size(); ++i) {
        obs_offset[i] = total;
        total += static_cast<size_t>(observers[i].state_dim());
    }

    std::vector<double> state(total);
    std::copy(x0.begin(), x0.end(), state.begin());
    for (size_t i = 0; i < observers.size(); ++i)
        std::copy(observer_inits[i].begin(), observer_inits[i].end(),
                  state.begin() + static_cast<long>(obs_offset[i]));

    const long steps = std::lround(cfg.horizon / cfg.step);

    SimTrace trace;
    trace.step = cfg.step;
    trace.steady_fraction = cfg.steady_fraction;
    trace.truth_dim = plant.truth_dim;
    trace.observer_states.resize(observers.size());
    // Series labels: first standard observer -> xhat, further ones xhat2...;
    // each limited observer contributes a (xhatp, xhatpp) pair, further ones
    // xhatp2/xhatpp2...
    int n_std = 0, n_lim = 0;
    std::vector<std::pair<size_t, int>> series_src; // (observer index, 0=std,1=L1,2=L2)
    for (size_t i = 0; i < observers.size(); ++i) {
        if (observers[i].kind == canon::ObserverKind::standard) {
            ++n_std;
            EstimateSeries s;
            s.label = n_std == 1 ? "xhat" : "xhat" + std::to_string(n_std);
            s.dim = plant.truth_dim;
            trace.estimates.push_back(std::move(s));
            series_src.emplace_back(i, 0);
        } else {
            ++n_lim;
            const std::string suffix = n_lim == 1 ? "" : std::to_string(n_lim);
            EstimateSeries s1, s2;
            s1.label = "xhatp" + suffix;
            s2.label = "xhatpp" + suffix;
            s1.dim = s2.dim = plant.truth_dim;
            trace.estimates.push_back(std::move(s1));
            series_src.emplace_back(i, 1);
            trace.estimates.push_back(std::move(s2));
            series_src.emplace_back(i, 2);
        }
    }

    // Scratch buffers reused by the combined right-hand side.
    std::vector<double> px(np), pdx(np), ox, odx;
    double nu_held = 0.0;
    auto combined_rhs = [&](double t, const std::vector<double>& s, std::vector<double>& ds) {
        px.assign(s.begin(), s.begin() + np);
        plant.rhs(t, px, pdx);
        std::copy(pdx.begin(), pdx.end(), ds.begin());
        const double y = plant.output(px) + nu_held;
        for (size_t i = 0; i < observers.size(); ++i) {
            const int dim = observers[i].state_dim();
            ox.assign(s.begin() + static_cast<long>(obs_offset[i]),
                      s.begin() + static_cast<long>(obs_offset[i]) + dim);
            odx = observers[i].kind == canon::ObserverKind::standard
                      ? canon::standard_observer_rhs(observers[i], ox, y)
                      : canon::limited_observer_rhs(observers[i], ox, y);
            std::copy(odx.begin(), odx.end(), ds.begin() + static_cast<long>(obs_offset[i]));
        }
    };

    std::vector<double> truth_buf(plant.truth_dim);
    auto record = [&](double t) {
        trace.time.push_back(t);
        px.assign(state.begin(), state.begin() + np);
        plant.truth(px, truth_buf);
        trace.truth.insert(trace.truth.end(), truth_buf.begin(), truth_buf.end());
        trace.noise.push_back(noise.value(t));
        for (size_t i = 0; i < observers.size(); ++i)
            trace.observer_states[i].insert(trace.observer_states[i].end(),
                                            state.begin() + static_cast<long>(obs_offset[i]),
                                            state.begin() + static_cast<long>(obs_offset[i]) +
                                                observers[i].state_dim());
        for (size_t srs = 0; srs < series_src.size(); ++srs) {
            const auto [oi, which] = series_src[srs];
            std::vector<double> est;
            if (which == 0) {
                est.assign(state.begin() + static_cast<long>(obs_offset[oi]),
                           state.begin() + static_cast<long>(obs_offset[oi]) +
                               observers[oi].state_dim());
            } else {
                const std::vector<double> xi(state.begin() + static_cast<long>(obs_offset[oi]),
                                             state.begin() + static_cast<long>(obs_offset[oi]) +
                                                 observers[oi].state_dim());
                est = which == 1 ? canon::extract_l1(observers[oi].n, xi)
                                 : canon::extract_l2(observers[oi].n, xi);
            }
            EstimateSeries& series = trace.estimates[srs];
            for (int c = 0; c < series.dim; ++c) {
                series.values.push_back(est[static_cast<size_t>(c)]);
                series.errors.push_back(est[static_cast<size_t>(c)] -
                                        truth_buf[static_cast<size_t>(c)]);
            }
        }
    };

    record(0.0);
    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * cfg.step;
        nu_held = noise.value(t);
        state = rk4_step(combined_rhs, state, t, cfg.step);
        for (double v : state)
            if (std::fabs(v) > 1e12 || !std::isfinite(v))
                throw divergence_error("cosimulate: state exceeded divergence threshold",
                                       t + cfg.step);
        if ((k + 1) % cfg.stride == 0 || k + 1 == steps)
            record(static_cast<double>(k + 1) * cfg.step);
    }
    return trace;
}

namespace {

double error_norm(const SimTrace& trace, size_t series, size_t k) {
    const EstimateSeries& s = trace.estimates[series];
    double acc = 0.0;
    for (int c = 0; c < s.dim; ++c) {
        const double e = s.errors[k * static_cast<size_t>(s.dim) + static_cast<size_t>(c)];
        acc += e * e;
    }
    return std::sqrt(acc);
}

} // namespace

double asymptotic_error(const SimTrace& trace, size_t series, int component) {
    if (series >= trace.estimates.size())
        throw std::invalid_argument("asymptotic_error: series index out of range");
    const EstimateSeries& s = trace.estimates[series];
    if (component < 0 || component >= s.dim)
        throw std::invalid_argument("asymptotic_error: component out of range");
    const double t_end = trace.time.back();
    const double t_from = t_end * (1.0 - trace.steady_fraction);
    double sup = 0.0;
    bool any = false;
    for (size_t k = 0; k < trace.samples(); ++k) {
        if (trace.time[k] < t_from) continue;
        any = true;
        sup = std::max(sup, std::fabs(s.errors[k * static_cast<size_t>(s.dim) +
                                               static_cast<size_t>(component)]));
    }
    if (!any) throw numeric_error("asymptotic_error: empty steady window");
    return sup;
}

double peak_error(const SimTrace& trace, size_t series) {
    if (series >= trace.estimates.size())
        throw std::invalid_argument("peak_error: series index out of range");
    double peak = 0.0;
    for (size_t k = 0; k < trace.samples(); ++k)
        peak = std::max(peak, error_norm(trace, series, k));
    return peak;
}

DecayFit decay_fit(const SimTrace& trace, size_t series) {
    if (series >= trace.estimates.size())
        throw std::invalid_argument("decay_fit: series index out of range");
    const size_t n = trace.samples();
    double peak = 0.0;
    size_t peak_at = 0;
    for (size_t k = 0; k < n; ++k) {
        const double e = error_norm(trace, series, k);
        if (e > peak) {
            peak = e;
            peak_at = k;
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t count = 0;
    for (size_t k = peak_at; k < n; ++k) {
        const double e = error_norm(trace, series, k);
        if (e < 1e-9 || e > 0.1 * peak) continue;
        const double x = trace.time[k];
        const double y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 10) throw numeric_error("decay_fit: fewer than 10 usable samples");
    const double denom = static_cast<double>(count) * sxx - sx * sx;
    const double slope = (static_cast<double>(count) * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / static_cast<double>(count);
    return {slope, std::exp(intercept), count};
}

void write_trace_csv(const SimTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
    out << "t";
    for (int i = 1; i <= trace.truth_dim; ++i) out << ",x" << i;
    for (const auto& s : trace.estimates)
        for (int i = 1; i <= s.dim; ++i) out << "," << s.label << i;
    for (const auto& s : trace.estimates)
        for (int i = 1; i <= s.dim; ++i) out << ",err_" << s.label << i;
    out << ",nu\n";
    char buf[32];
    auto emit = [&out, &buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << ',' << buf;
    };
    for (size_t k = 0; k < trace.samples(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", trace.time[k]);
        out << buf;
        for (int i = 0; i < trace.truth_dim; ++i) emit(trace.truth_at(k, i));
        for (const auto& s : trace.estimates)
            for (int i = 0; i < s.dim; ++i)
                emit(s.values[k * static_cast<size_t>(s.dim) + static_cast<size_t>(i)]);
        for (const auto& s : trace.estimates)
            for (int i = 0; i < s.dim; ++i)
                emit(s.errors[k * static_cast<size_t>(s.dim) + static_cast<size_t>(i)]);
        emit(trace.noise[k]);
        out << '\n';
    }
}

} // namespace hgobs::sim
