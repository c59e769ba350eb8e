#pragma once

#include <vector>

#include "hgobs/matrix.hpp"

namespace hgobs::num {

/// Real monic polynomial; coefficients ordered from the highest degree
/// down to the constant term, leading coefficient exactly 1.
class Polynomial {
public:
    /// Monic polynomial from the full coefficient vector (leading entry
    /// must be 1 within 1e-12; it is then pinned to exactly 1).
    explicit Polynomial(std::vector<double> coeffs);

    /// lambda^degree + tail[0] lambda^{degree-1} + ... + tail.back().
    static Polynomial from_tail(std::vector<double> tail);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Coefficients after the leading 1 (m_1 ... m_degree).
    std::vector<double> tail() const;

    Complex eval(Complex x) const;

    /// Companion matrix (lower form: ones on the subdiagonal, negated
    /// coefficients in the last column).
    Matrix companion() const;

    bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

private:
    std::vector<double> coeffs_;
};

/// Monic polynomial with the given roots, which must be closed under
/// complex conjugation (paired within 1e-9 relative); conjugate pairs are
/// expanded as real quadratics. Throws std::invalid_argument otherwise.
Polynomial poly_from_roots(const ComplexList& roots);

/// Characteristic polynomial det(lambda I - m) via the Faddeev-LeVerrier
/// recursion. Throws std::invalid_argument for non-square input.
Polynomial char_poly(const Matrix& m);

/// All real roots (companion eigenvalues with |Im| <= 1e-7 (1 + |Re|)),
/// sorted ascending.
std::vector<double> real_roots(const Polynomial& p);

/// Routh-Hurwitz test: true iff all roots lie strictly in the open left
/// half-plane. A zero first-column pivot (marginal polynomial) is
/// non-Hurwitz by definition, so no epsilon perturbation is used.
bool is_hurwitz(const Polynomial& p);

} // namespace hgobs::num
