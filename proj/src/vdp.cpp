#include "hgobs/vdp.hpp"

#include <cmath>
#include <stdexcept>

#include "hgobs/canon.hpp"
#include "hgobs/errors.hpp"

namespace hgobs::vdp {

void VdpParams::validate() const {
    if (!(alpha >= 1e-3) || !(beta >= 1e-3))
        throw std::invalid_argument("VdpParams: alpha and beta must be >= 1e-3");
}

std::array<double, 2> vdp_rhs(double z, double zdot, const VdpParams& p) {
    return {zdot, -p.alpha * p.alpha * z + p.beta * (1.0 - z * z) * zdot};
}

JetState jet_extend(double z, double zdot, const VdpParams& p) {
    const double a = p.alpha * p.alpha;
    const double b = p.beta;
    const double d2 = -a * z + b * (1.0 - z * z) * zdot;
    const double d3 = -a * zdot + b * ((1.0 - z * z) * d2 - 2.0 * z * zdot * zdot);
    const double d4 = -a * d2 + b * ((1.0 - z * z) * d3 - 2.0 * zdot * zdot * zdot -
                                     6.0 * z * zdot * d2);
    return {z, zdot, d2, d3, d4};
}

num::Matrix upsilon(const std::array<double, 4>& z03) {
    const double z = z03[0], dz = z03[1], d2 = z03[2], d3 = z03[3];
    num::Matrix u(3, 2);
    u(0, 0) = -z;
    u(0, 1) = (1.0 - z * z) * dz;
    u(1, 0) = -dz;
    u(1, 1) = d2 - 2.0 * z * dz * dz - z * z * d2;
    u(2, 0) = -d2;
    u(2, 1) = d3 - 2.0 * dz * dz * dz - 6.0 * z * dz * d2 - z * z * d3;
    return u;
}

std::array<double, 2> rho_vec(const JetState& jet) {
    const double z = jet[0], dz = jet[1], d2 = jet[2], d3 = jet[3], d4 = jet[4];
    return {-d3,
            d4 * (1.0 - z * z) - 12.0 * dz * dz * d2 - 6.0 * z * d2 * d2 - 8.0 * z * dz * d3};
}

std::array<double, 2> mu_hat(const JetState& jet, bool* degenerate) {
    const num::Matrix u = upsilon({jet[0], jet[1], jet[2], jet[3]});
    // 2x2 normal equations G mu = U^T z_[2,4].
    double g00 = 0, g01 = 0, g11 = 0, r0 = 0, r1 = 0;
    for (int i = 0; i < 3; ++i) {
        g00 += u(i, 0) * u(i, 0);
        g01 += u(i, 0) * u(i, 1);
        g11 += u(i, 1) * u(i, 1);
        r0 += u(i, 0) * jet[static_cast<size_t>(i + 2)];
        r1 += u(i, 1) * jet[static_cast<size_t>(i + 2)];
    }
    // Singular values of U from the eigenvalues of G.
    const double tr = g00 + g11;
    const double det = g00 * g11 - g01 * g01;
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    const double emax = 0.5 * (tr + disc);
    const double emin = std::max(0.5 * (tr - disc), 0.0);
    const bool bad = emax == 0.0 || std::sqrt(emin) < 1e-8 * std::sqrt(emax);
    if (degenerate) *degenerate = bad;
    double d00 = g00, d01 = g01, d11 = g11;
    if (bad) {
        d00 += 1e-10;
        d11 += 1e-10;
    }
    const double den = d00 * d11 - d01 * d01;
    return {(d11 * r0 - d01 * r1) / den, (d00 * r1 - d01 * r0) / den};
}

double phi5(const JetState& jet, bool* degenerate) {
    const std::array<double, 2> mu = mu_hat(jet, degenerate);
    const std::array<double, 2> rho = rho_vec(jet);
    return rho[0] * mu[0] + rho[1] * mu[1];
}

std::function<double(const std::vector<double>&)> phi5_handle() {
    return [](const std::vector<double>& x) {
        return phi5({x[0], x[1], x[2], x[3], x[4]});
    };
}

double reference_sat_bound(const VdpParams& p, double horizon, double step) {
    p.validate();
    std::vector<double> s{1.0, 0.0};
    auto rhs = [&p](double, const std::vector<double>& x, std::vector<double>& dx) {
        const std::array<double, 2> d = vdp_rhs(x[0], x[1], p);
        dx[0] = d[0];
        dx[1] = d[1];
    };
    const long steps = std::lround(horizon / step);
    double sup = 0.0;
    for (long k = 0; k <= steps; ++k) {
        const JetState jet = jet_extend(s[0], s[1], p);
        sup = std::max(sup, std::fabs(phi5(jet)));
        if (k < steps) s = sim::rk4_step(rhs, s, static_cast<double>(k) * step, step);
    }
    return 1.2 * sup;
}

sim::PlantModel vdp_plant(const VdpParams& p) {
    p.validate();
    sim::PlantModel plant;
    plant.state_dim = 2;
    plant.truth_dim = 5;
    plant.rhs = [p](double, const std::vector<double>& x, std::vector<double>& dx) {
        const std::array<double, 2> d = vdp_rhs(x[0], x[1], p);
        dx[0] = d[0];
        dx[1] = d[1];
    };
    plant.output = [](const std::vector<double>& x) { return x[0]; };
    plant.truth = [p](const std::vector<double>& x, std::vector<double>& tr) {
        const JetState jet = jet_extend(x[0], x[1], p);
        tr.assign(jet.begin(), jet.end());
    };
    return plant;
}

sim::PlantModel immersed_plant(double sat_bound) {
    return sim::prime_form_plant(5, [sat_bound](const std::vector<double>& x) {
        return canon::saturate(phi5({x[0], x[1], x[2], x[3], x[4]}), sat_bound);
    });
}

BenchmarkConfig BenchmarkConfig::noise_free(double ell) {
    BenchmarkConfig cfg;
    cfg.ell = ell;
    cfg.noisy = false;
    cfg.noise = {};
    cfg.sim.step = 1e-3;
    cfg.sim.horizon = 20.0;
    cfg.sim.stride = 1;
    cfg.sim.steady_fraction = 0.5;
    return cfg;
}

BenchmarkConfig BenchmarkConfig::with_noise(double ell) {
    BenchmarkConfig cfg;
    cfg.ell = ell;
    cfg.noisy = true;
    cfg.noise = {1e-2, 1e3, 0.0};
    cfg.sim.step = 2.5e-4;
    cfg.sim.horizon = 40.0;
    cfg.sim.stride = 2;
    cfg.sim.steady_fraction = 0.5;
    return cfg;
}

std::vector<double> paper_standard_gains() { return {1.5, 0.85, 0.225, 0.0274, 0.0012}; }

canon::GainLadder paper_ladder() {
    return {5, {{0.6, 0.3}, {0.6, 0.111}, {0.6, 0.0485}, {0.6, 0.0178}}};
}

num::ComplexList paper_target_roots() {
    return {{-0.1, 0.0}, {-0.2, 0.0}, {-0.2, 0.0}, {-0.3, 0.0},
            {-0.3, 0.0}, {-0.4, 0.0}, {-0.4, 0.0}, {-0.5, 0.0}};
}

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg) {
    cfg.params.validate();
    BenchmarkReport report;
    report.config = cfg;
    report.sat_bound = cfg.sat_margin / 1.2 * reference_sat_bound(cfg.params);

    canon::ObserverSpec std_obs;
    std_obs.kind = canon::ObserverKind::standard;
    std_obs.n = 5;
    std_obs.ell = cfg.ell;
    std_obs.gains = paper_standard_gains();
    std_obs.sat_bound = report.sat_bound;
    std_obs.phi = phi5_handle();

    canon::ObserverSpec lim_obs;
    lim_obs.kind = canon::ObserverKind::limited_power;
    lim_obs.n = 5;
    lim_obs.ell = cfg.ell;
    lim_obs.ladder = paper_ladder();
    lim_obs.sat_bound = report.sat_bound;
    lim_obs.phi = phi5_handle();

    const sim::SinusoidSignal noise = cfg.noisy ? cfg.noise : sim::SinusoidSignal{};
    report.trace = sim::cosimulate(vdp_plant(cfg.params), {std_obs, lim_obs}, noise,
                                   sim::DisturbanceSignal::none(), {1.0, 0.0},
                                   {std::vector<double>(5, 0.0), std::vector<double>(8, 0.0)},
                                   cfg.sim);

    if (cfg.noisy && cfg.noise.amplitude > 0.0) {
        for (size_t s = 0; s < 3; ++s)
            for (int c = 0; c < 5; ++c)
                report.normalized[s][static_cast<size_t>(c)] =
                    sim::asymptotic_error(report.trace, s, c) / cfg.noise.amplitude;
    }
    return report;
}

} // namespace hgobs::vdp
