#pragma once

#include <array>

#include "hgobs/matrix.hpp"
#include "hgobs/sim.hpp"

namespace hgobs::vdp {

/// Uncertain oscillator parameters; mu = (alpha^2, beta) lives in a
/// compact set away from the origin.
struct VdpParams {
    double alpha = 1.0;
    double beta = 0.5;

    std::array<double, 2> mu() const { return {alpha * alpha, beta}; }
    void validate() const;
};

/// z_[0,4]: the output and its first four time derivatives.
using JetState = std::array<double, 5>;

/// (zdot, zddot) of the oscillator.
std::array<double, 2> vdp_rhs(double z, double zdot, const VdpParams& p);

/// Extends (z, zdot) with the second, third and fourth output derivatives
/// obtained by repeated differentiation of the dynamics.
JetState jet_extend(double z, double zdot, const VdpParams& p);

/// The 3x2 regressor with z_[2,4] = Upsilon(z_[0,3]) mu.
num::Matrix upsilon(const std::array<double, 4>& z03);

/// The 1x2 row with z^(5) = rho(z_[0,4]) mu. The first entry is
/// -z^(3), continuing the sign pattern of Upsilon's first column.
std::array<double, 2> rho_vec(const JetState& jet);

/// Least-squares parameter estimate (Upsilon^T Upsilon)^{-1} Upsilon^T z_[2,4].
/// Near rank deficiency (smallest singular value < 1e-8 * largest) the
/// normal equations are ridge-regularized with 1e-10 and *degenerate is
/// set when provided.
std::array<double, 2> mu_hat(const JetState& jet, bool* degenerate = nullptr);

/// The immersed nonlinearity phi(z_[0,4]) = rho(z_[0,4]) mu_hat(z_[0,4]);
/// equals z^(5) along trajectories of the oscillator.
double phi5(const JetState& jet, bool* degenerate = nullptr);

/// phi5 as an n=5 observer nonlinearity handle.
std::function<double(const std::vector<double>&)> phi5_handle();

/// 1.2 x sup |phi5| along a reference trajectory from (1, 0) over [0, T].
double reference_sat_bound(const VdpParams& p, double horizon = 40.0, double step = 1e-3);

/// 2-state oscillator plant whose truth map is the 5-jet and whose
/// measured output is z.
sim::PlantModel vdp_plant(const VdpParams& p);

/// 5-state immersed plant xdot = A_5 x + B_5 phi_s(x), for the
/// immersion-commutes-with-flow check.
sim::PlantModel immersed_plant(double sat_bound);

struct BenchmarkConfig {
    VdpParams params{};
    double ell = 100.0;
    bool noisy = true;
    sim::SinusoidSignal noise{1e-2, 1e3, 0.0};
    sim::SimConfig sim{};
    double sat_margin = 1.2;

    static BenchmarkConfig noise_free(double ell = 100.0);
    static BenchmarkConfig with_noise(double ell = 100.0);
};

struct BenchmarkReport {
    BenchmarkConfig config;
    double sat_bound = 0.0;
    sim::SimTrace trace;
    // normalized asymptotic errors |x^_i - x_i|_a / a_N, filled for noisy
    // runs; series order xhat, xhatp, xhatpp.
    std::array<std::array<double, 5>, 3> normalized{};
};

/// Paper gain sets of the Van der Pol example: the 5-gain classical
/// observer vector and the 4-pair ladder.
std::vector<double> paper_standard_gains();
canon::GainLadder paper_ladder();
num::ComplexList paper_target_roots();

/// Runs the two-observer co-simulation (classical + limited-power, both
/// at the configured ell) against the 2-state oscillator.
BenchmarkReport run_benchmark(const BenchmarkConfig& cfg);

} // namespace hgobs::vdp
