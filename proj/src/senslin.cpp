#include "hgobs/senslin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hgobs/errors.hpp"

namespace hgobs::sens {

void LinearPlant::validate() const {
    if (n < 2) throw std::invalid_argument("LinearPlant: n must be >= 2");
    if (static_cast<int>(phi.size()) != n)
        throw std::invalid_argument("LinearPlant: Phi must have length n");
    for (double v : phi)
        if (!std::isfinite(v)) throw std::invalid_argument("LinearPlant: non-finite Phi");
}

int rho_index(const std::vector<double>& phi) {
    for (size_t i = 0; i < phi.size(); ++i)
        if (phi[i] != 0.0) return static_cast<int>(i) + 1;
    return static_cast<int>(phi.size());
}

int r_prime(int i, int n, int rho) {
    if (i < 1 || i > n || rho < 1 || rho > n)
        throw std::invalid_argument("r_prime: indices out of range");
    return std::min(i, std::min(n - 1, rho + n - i + 1));
}

namespace {

void require_hurwitz(const Matrix& a, const char* who) {
    double worst = -1.0;
    double worst_im = 0.0;
    for (const num::Complex& ev : num::eigvals(a))
        if (ev.real() > worst) {
            worst = ev.real();
            worst_im = ev.imag();
        }
    if (worst >= 0.0)
        throw numeric_error(std::string(who) + ": closed matrix not Hurwitz, eigenvalue " +
                            std::to_string(worst) + (worst_im >= 0 ? "+" : "") +
                            std::to_string(worst_im) + "i");
}

} // namespace

SisoSystem error_system_standard(const LinearPlant& plant, const std::vector<double>& gains,
                                 double ell, int channel) {
    plant.validate();
    const int n = plant.n;
    if (static_cast<int>(gains.size()) != n)
        throw std::invalid_argument("error_system_standard: K_n must have length n");
    if (channel < 1 || channel > n)
        throw std::invalid_argument("error_system_standard: channel out of range");
    const canon::PrimeTriplet pf = canon::prime_triplet(n);
    const Matrix k_col = Matrix::column(gains);
    const Matrix base = pf.a - k_col * pf.c;
    require_hurwitz(base, "error_system_standard (A - K C)");
    const canon::DilationSet dil(n, ell);
    Matrix a = ell * base + pf.b * (Matrix::row(plant.phi) * dil.theta());
    require_hurwitz(a, "error_system_standard");
    SisoSystem sys{std::move(a), ell * k_col, Matrix(1, n)};
    sys.c(0, channel - 1) = std::pow(ell, channel - 1);
    return sys;
}

SisoSystem error_system_new(const LinearPlant& plant, const GainLadder& ladder, double ell,
                            int channel) {
    plant.validate();
    ladder.validate();
    const int n = plant.n;
    if (ladder.n != n) throw std::invalid_argument("error_system_new: ladder dimension mismatch");
    if (channel < 1 || channel > n)
        throw std::invalid_argument("error_system_new: channel out of range");
    const int dim = 2 * n - 2;
    const canon::DilationSet dil(n, ell);
    const auto [l1, l2] = canon::selectors(n);
    (void)l2;
    // Feedthrough row ell^{-(n-1)} Phi L1 S(ell) into the last state.
    const Matrix row = Matrix::row(plant.phi) * l1 * dil.s() * std::pow(ell, -(n - 1.0));
    Matrix a = ell * canon::build_M(ladder);
    for (int j = 0; j < dim; ++j) a(dim - 1, j) += row(0, j);
    require_hurwitz(a, "error_system_new");
    Matrix b(dim, 1);
    b(0, 0) = ell * ladder.pairs[0].first;
    b(1, 0) = ell * ladder.pairs[0].second;
    Matrix c(1, dim);
    if (channel < n)
        c(0, 2 * (channel - 1)) = std::pow(ell, channel - 1);
    else
        c(0, dim - 1) = std::pow(ell, n - 1);
    return {std::move(a), std::move(b), std::move(c)};
}

double freq_response_mag(const SisoSystem& sys, double omega) {
    const std::vector<num::Complex> x =
        num::solve_shifted(sys.a, num::Complex(0.0, omega), sys.b);
    num::Complex acc = 0.0;
    for (int j = 0; j < sys.c.cols(); ++j) acc += sys.c(0, j) * x[static_cast<size_t>(j)];
    return std::abs(acc);
}

int relative_degree(const SisoSystem& sys) {
    const int dim = sys.a.rows();
    if (dim > 32) throw std::invalid_argument("relative_degree: dimension above 32");
    const double nc = sys.c.frobenius();
    const double nb = sys.b.frobenius();
    const double na = sys.a.frobenius();
    Matrix akb = sys.b; // A^{k-1} B
    double apow = 1.0;
    for (int k = 1; k <= dim; ++k) {
        double markov = 0.0;
        for (int j = 0; j < dim; ++j) markov += sys.c(0, j) * akb(j, 0);
        if (std::fabs(markov) > 1e-9 * nc * nb * std::max(apow, 1.0)) return k;
        akb = sys.a * akb;
        apow *= na;
    }
    throw numeric_error("relative_degree: all Markov parameters vanish through k = dimension");
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("geometric_grid: need 0 < lo < hi and count >= 2");
    std::vector<double> g(static_cast<size_t>(count));
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) g[static_cast<size_t>(i)] = lo * std::exp(step * i);
    return g;
}

double ratio_slope(const LinearPlant& plant, const std::vector<double>& gains,
                   const GainLadder& ladder, double ell, int channel,
                   const std::vector<double>& omega_grid) {
    const SisoSystem std_sys = error_system_standard(plant, gains, ell, channel);
    const SisoSystem new_sys = error_system_new(plant, ladder, ell, channel);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double w : omega_grid) {
        const double x = std::log(w);
        const double y =
            std::log(freq_response_mag(new_sys, w) / freq_response_mag(std_sys, w));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(omega_grid.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<SweepRow> sensitivity_sweep(const LinearPlant& plant,
                                        const std::vector<double>& gains,
                                        const GainLadder& ladder, double ell,
                                        const std::vector<double>& omega_grid) {
    const int n = plant.n;
    std::vector<SisoSystem> std_sys, new_sys;
    for (int i = 1; i <= n; ++i) {
        std_sys.push_back(error_system_standard(plant, gains, ell, i));
        new_sys.push_back(error_system_new(plant, ladder, ell, i));
    }
    std::vector<SweepRow> rows;
    rows.reserve(omega_grid.size());
    for (double w : omega_grid) {
        SweepRow row;
        row.omega = w;
        for (int i = 0; i < n; ++i) {
            row.mag_std.push_back(freq_response_mag(std_sys[static_cast<size_t>(i)], w));
            row.mag_new.push_back(freq_response_mag(new_sys[static_cast<size_t>(i)], w));
            row.ratio.push_back(row.mag_new.back() / row.mag_std.back());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace hgobs::sens
