#include "hgobs/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hgobs/errors.hpp"

namespace hgobs::num {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("Polynomial: empty coefficient vector");
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw std::invalid_argument("Polynomial: non-finite coefficient");
    if (std::fabs(coeffs_.front() - 1.0) > 1e-12)
        throw std::invalid_argument("Polynomial: leading coefficient must be 1");
    coeffs_.front() = 1.0;
}

Polynomial Polynomial::from_tail(std::vector<double> tail) {
    std::vector<double> c;
    c.reserve(tail.size() + 1);
    c.push_back(1.0);
    c.insert(c.end(), tail.begin(), tail.end());
    return Polynomial(std::move(c));
}

std::vector<double> Polynomial::tail() const {
    return {coeffs_.begin() + 1, coeffs_.end()};
}

Complex Polynomial::eval(Complex x) const {
    Complex acc = 0.0;
    for (double c : coeffs_) acc = acc * x + c;
    return acc;
}

Matrix Polynomial::companion() const {
    const int d = degree();
    if (d < 1) throw std::invalid_argument("companion: degree must be >= 1");
    Matrix c(d, d);
    for (int i = 0; i + 1 < d; ++i) c(i + 1, i) = 1.0;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -coeffs_[static_cast<size_t>(d - i)];
    return c;
}

Polynomial poly_from_roots(const ComplexList& roots) {
    std::vector<double> coeffs{1.0};
    std::vector<bool> used(roots.size(), false);
    auto multiply = [&coeffs](const std::vector<double>& factor) {
        std::vector<double> out(coeffs.size() + factor.size() - 1, 0.0);
        for (size_t i = 0; i < coeffs.size(); ++i)
            for (size_t j = 0; j < factor.size(); ++j) out[i + j] += coeffs[i] * factor[j];
        coeffs = std::move(out);
    };
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const Complex z = roots[i];
        const double tol = 1e-9 * (1.0 + std::abs(z));
        if (std::fabs(z.imag()) <= tol) {
            multiply({1.0, -z.real()});
            continue;
        }
        size_t mate = roots.size();
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (!used[j] && std::abs(std::conj(z) - roots[j]) <= tol) {
                mate = j;
                break;
            }
        if (mate == roots.size())
            throw std::invalid_argument("poly_from_roots: roots not closed under conjugation");
        used[mate] = true;
        multiply({1.0, -2.0 * z.real(), std::norm(z)});
    }
    return Polynomial(std::move(coeffs));
}

Polynomial char_poly(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("char_poly: matrix must be square");
    const int n = m.rows();
    if (n == 0) return Polynomial({1.0});
    // Faddeev-LeVerrier: N_1 = m, c_k = -tr(N_k)/k, N_{k+1} = m (N_k + c_k I)
    std::vector<double> coeffs(static_cast<size_t>(n) + 1, 0.0);
    coeffs[0] = 1.0;
    Matrix nk = m;
    for (int k = 1; k <= n; ++k) {
        double trace = 0.0;
        for (int i = 0; i < n; ++i) trace += nk(i, i);
        coeffs[static_cast<size_t>(k)] = -trace / k;
        if (k < n) {
            for (int i = 0; i < n; ++i) nk(i, i) += coeffs[static_cast<size_t>(k)];
            nk = m * nk;
        }
    }
    return Polynomial(std::move(coeffs));
}

std::vector<double> real_roots(const Polynomial& p) {
    if (p.degree() < 1) throw std::invalid_argument("real_roots: degree must be >= 1");
    std::vector<double> out;
    for (const Complex& z : eigvals(p.companion()))
        if (std::fabs(z.imag()) <= 1e-7 * (1.0 + std::fabs(z.real()))) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_hurwitz(const Polynomial& p) {
    const int d = p.degree();
    if (d < 1) throw std::invalid_argument("is_hurwitz: degree must be >= 1");
    const std::vector<double>& c = p.coeffs();
    // Necessary for strict Hurwitz with monic leading coefficient.
    for (double v : c)
        if (v <= 0.0) return false;
    if (d == 1) return true;
    // Routh table; any nonpositive first-column pivot (including the
    // marginal all-zero-row case) means not strictly Hurwitz.
    std::vector<double> prev, cur;
    for (int j = 0; j <= d; j += 2) prev.push_back(c[static_cast<size_t>(j)]);
    for (int j = 1; j <= d; j += 2) cur.push_back(c[static_cast<size_t>(j)]);
    for (int row = 2; row <= d; ++row) {
        if (cur.front() <= 0.0) return false;
        std::vector<double> next;
        const size_t width = prev.size() - 1;
        for (size_t i = 0; i < width; ++i) {
            const double a = (i + 1 < prev.size()) ? prev[i + 1] : 0.0;
            const double b = (i + 1 < cur.size()) ? cur[i + 1] : 0.0;
            next.push_back((cur.front() * a - prev.front() * b) / cur.front());
        }
        if (next.empty()) next.push_back(0.0);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur.front() > 0.0;
}

} // namespace hgobs::num
