#include "hgobs/canon.hpp"

#include <cmath>
#include <stdexcept>

#include "hgobs/errors.hpp"

namespace hgobs::canon {

bool GainLadder::all_positive() const {
    for (const auto& [k1, k2] : pairs)
        if (k1 <= 0.0 || k2 <= 0.0) return false;
    return true;
}

void GainLadder::validate() const {
    if (n < 2) throw std::invalid_argument("GainLadder: n must be >= 2");
    if (static_cast<int>(pairs.size()) != n - 1)
        throw std::invalid_argument("GainLadder: expected n-1 gain pairs");
    for (const auto& [k1, k2] : pairs)
        if (!std::isfinite(k1) || !std::isfinite(k2))
            throw std::invalid_argument("GainLadder: non-finite gain");
}

DilationSet::DilationSet(int n_, double ell_) : n(n_), ell(ell_) {
    if (n < 1) throw std::invalid_argument("DilationSet: n must be >= 1");
    if (!(ell >= 1.0)) throw std::invalid_argument("DilationSet: ell must be >= 1");
}

Matrix DilationSet::d_n() const {
    std::vector<double> d(n);
    double p = 1.0;
    for (int i = 0; i < n; ++i) d[i] = (p *= ell);
    return Matrix::diagonal(d);
}

Matrix DilationSet::d2() const { return Matrix::diagonal({ell, ell * ell}); }

Matrix DilationSet::gamma() const {
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = std::pow(ell, n - 1 - i);
    return Matrix::diagonal(d);
}

Matrix DilationSet::theta() const {
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = std::pow(ell, i + 1 - n);
    return Matrix::diagonal(d);
}

Matrix DilationSet::s() const {
    if (n < 2) throw std::invalid_argument("DilationSet::s: needs n >= 2");
    std::vector<double> d(2 * (n - 1));
    for (int i = 1; i <= n - 1; ++i) {
        d[2 * (i - 1)] = std::pow(ell, i - 1);
        d[2 * (i - 1) + 1] = std::pow(ell, i);
    }
    return Matrix::diagonal(d);
}

void ObserverSpec::validate() const {
    if (n < 2) throw std::invalid_argument("ObserverSpec: n must be >= 2");
    if (!(ell >= 1.0)) throw std::invalid_argument("ObserverSpec: ell must be >= 1");
    if (!(sat_bound > 0.0)) throw std::invalid_argument("ObserverSpec: sat_bound must be > 0");
    if (kind == ObserverKind::standard) {
        if (static_cast<int>(gains.size()) != n)
            throw std::invalid_argument("ObserverSpec: standard kind needs n gains");
        const PrimeTriplet pf = prime_triplet(n);
        const Matrix closed = pf.a - Matrix::column(gains) * pf.c;
        if (!num::is_hurwitz_matrix(closed))
            throw std::invalid_argument("ObserverSpec: A - K C is not Hurwitz");
    } else {
        ladder.validate();
        if (ladder.n != n) throw std::invalid_argument("ObserverSpec: ladder dimension mismatch");
        if (!num::is_hurwitz_matrix(build_M(ladder)))
            throw std::invalid_argument("ObserverSpec: M is not Hurwitz");
    }
}

PrimeTriplet prime_triplet(int n) {
    if (n < 1) throw std::invalid_argument("prime_triplet: n must be >= 1");
    PrimeTriplet t{n, Matrix(n, n), Matrix(n, 1), Matrix(1, n)};
    for (int i = 0; i + 1 < n; ++i) t.a(i, i + 1) = 1.0;
    t.b(n - 1, 0) = 1.0;
    t.c(0, 0) = 1.0;
    return t;
}

Matrix build_M(const GainLadder& g) {
    g.validate();
    const int nb = g.n - 1;
    Matrix m(2 * nb, 2 * nb);
    for (int i = 0; i < nb; ++i) {
        const auto [k1, k2] = g.pairs[static_cast<size_t>(i)];
        m(2 * i, 2 * i) = -k1;
        m(2 * i, 2 * i + 1) = 1.0;
        m(2 * i + 1, 2 * i) = -k2;
        if (i + 1 < nb) m(2 * i + 1, 2 * i + 3) = 1.0; // N block
        if (i > 0) {                                   // Q block
            m(2 * i, 2 * i - 1) = k1;
            m(2 * i + 1, 2 * i - 1) = k2;
        }
    }
    return m;
}

std::pair<Matrix, Matrix> selectors(int n) {
    if (n < 2) throw std::invalid_argument("selectors: n must be >= 2");
    Matrix l1(n, 2 * n - 2), l2(n, 2 * n - 2);
    for (int i = 0; i < n - 2; ++i) l1(i, 2 * i) = 1.0;
    l1(n - 2, 2 * n - 4) = 1.0;
    l1(n - 1, 2 * n - 3) = 1.0;
    l2(0, 0) = 1.0;
    l2(1, 1) = 1.0;
    for (int i = 2; i < n; ++i) l2(i, 2 * i - 1) = 1.0;
    return {l1, l2};
}

double saturate(double v, double bound) {
    if (!(bound > 0.0)) throw std::invalid_argument("saturate: bound must be positive");
    if (v > bound) return bound;
    if (v < -bound) return -bound;
    return v;
}

namespace {

double phi_sat(const ObserverSpec& spec, const std::vector<double>& x) {
    const double raw = spec.phi ? spec.phi(x) : 0.0;
    return saturate(raw, spec.sat_bound);
}

} // namespace

std::vector<double> standard_observer_rhs(const ObserverSpec& spec,
                                          const std::vector<double>& xhat, double y) {
    const int n = spec.n;
    if (static_cast<int>(xhat.size()) != n)
        throw std::invalid_argument("standard_observer_rhs: state dimension mismatch");
    const double innov = y - xhat[0];
    std::vector<double> out(n);
    double lp = 1.0;
    for (int i = 0; i < n; ++i) {
        lp *= spec.ell;
        out[static_cast<size_t>(i)] =
            (i + 1 < n ? xhat[static_cast<size_t>(i + 1)] : phi_sat(spec, xhat)) +
            lp * spec.gains[static_cast<size_t>(i)] * innov;
    }
    return out;
}

std::vector<double> limited_observer_rhs(const ObserverSpec& spec, const std::vector<double>& xi,
                                         double y) {
    const int n = spec.n;
    const int nb = n - 1;
    if (static_cast<int>(xi.size()) != 2 * nb)
        throw std::invalid_argument("limited_observer_rhs: state dimension mismatch");
    const double l1 = spec.ell;
    const double l2 = spec.ell * spec.ell;
    std::vector<double> out(2 * nb);
    for (int b = 0; b < nb; ++b) {
        const auto [k1, k2] = spec.ladder.pairs[static_cast<size_t>(b)];
        const double e = (b == 0 ? y : xi[static_cast<size_t>(2 * b - 1)]) -
                         xi[static_cast<size_t>(2 * b)];
        out[static_cast<size_t>(2 * b)] = xi[static_cast<size_t>(2 * b + 1)] + l1 * k1 * e;
        double second = l2 * k2 * e;
        if (b + 1 < nb)
            second += xi[static_cast<size_t>(2 * b + 3)]; // N xi_{b+1}
        else
            second += phi_sat(spec, extract_l1(n, xi)); // B phi_s(xhat')
        out[static_cast<size_t>(2 * b + 1)] = second;
    }
    return out;
}

std::vector<double> extract_l1(int n, const std::vector<double>& xi) {
    std::vector<double> x(static_cast<size_t>(n));
    for (int i = 0; i < n - 2; ++i) x[static_cast<size_t>(i)] = xi[static_cast<size_t>(2 * i)];
    x[static_cast<size_t>(n - 2)] = xi[static_cast<size_t>(2 * n - 4)];
    x[static_cast<size_t>(n - 1)] = xi[static_cast<size_t>(2 * n - 3)];
    return x;
}

std::vector<double> extract_l2(int n, const std::vector<double>& xi) {
    std::vector<double> x(static_cast<size_t>(n));
    x[0] = xi[0];
    x[1] = xi[1];
    for (int i = 2; i < n; ++i) x[static_cast<size_t>(i)] = xi[static_cast<size_t>(2 * i - 1)];
    return x;
}

} // namespace hgobs::canon
