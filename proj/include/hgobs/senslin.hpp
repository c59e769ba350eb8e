#pragma once

#include <vector>

#include "hgobs/canon.hpp"
#include "hgobs/matrix.hpp"

namespace hgobs::sens {

using canon::GainLadder;
using num::Matrix;

/// Linear plant phi(x) = Phi x with Phi a row of dimension n.
struct LinearPlant {
    int n = 0;
    std::vector<double> phi;

    void validate() const;
};

/// One error-to-output channel as a state-space (A, B, C) triple.
struct SisoSystem {
    Matrix a; // square, Hurwitz when produced by the builders
    Matrix b; // column
    Matrix c; // row
};

/// Position index (1-based) of the first nonzero entry of Phi; n when
/// Phi is the zero vector.
int rho_index(const std::vector<double>& phi);

/// r_i' = min{ i, n-1, rho+n-i+1 }.
int r_prime(int i, int n, int rho);

/// Error system of the classical observer for output channel i:
/// A = ell (A_n - K_n C_n) + B_n Phi Theta_n(ell), B = ell K_n,
/// C = ell^{i-1} times the i-th unit row. Throws numeric_error naming the
/// offending eigenvalue when the closed matrix is not Hurwitz.
SisoSystem error_system_standard(const LinearPlant& plant, const std::vector<double>& gains,
                                 double ell, int channel);

/// Error system of the limited-power observer for output channel i:
/// A = ell M + B_{2n-2} (ell^{-(n-1)} Phi L1 S(ell)), B = ell col(K_1, 0...),
/// C picks epsilon_{i,1} scaled ell^{i-1} (epsilon_{n-1,2} for i = n).
SisoSystem error_system_new(const LinearPlant& plant, const GainLadder& ladder, double ell,
                            int channel);

/// |C (j omega I - A)^{-1} B| via one complex linear solve.
double freq_response_mag(const SisoSystem& sys, double omega);

/// Smallest k >= 1 with |C A^{k-1} B| above the scaled tolerance
/// 1e-9 ||C|| ||A||^{k-1} ||B||. Throws numeric_error if every Markov
/// parameter through k = dim vanishes.
int relative_degree(const SisoSystem& sys);

/// Geometrically spaced grid, count points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int count);

/// Least-squares slope of log(|F'_i| / |F_i|) against log omega over the
/// given grid.
double ratio_slope(const LinearPlant& plant, const std::vector<double>& gains,
                   const GainLadder& ladder, double ell, int channel,
                   const std::vector<double>& omega_grid);

/// One sweep row for CSV export.
struct SweepRow {
    double omega;
    std::vector<double> mag_std;   // per channel
    std::vector<double> mag_new;   // per channel
    std::vector<double> ratio;     // per channel
};

std::vector<SweepRow> sensitivity_sweep(const LinearPlant& plant,
                                        const std::vector<double>& gains,
                                        const GainLadder& ladder, double ell,
                                        const std::vector<double>& omega_grid);

} // namespace hgobs::sens
