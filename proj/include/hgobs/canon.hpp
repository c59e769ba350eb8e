#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hgobs/matrix.hpp"

namespace hgobs::canon {

using num::Matrix;

/// Prime-form triplet: A the upper shift, B the last basis vector,
/// C the first basis vector.
struct PrimeTriplet {
    int n;
    Matrix a, b, c;
};

/// The n-1 gain pairs (k_i1, k_i2) parameterizing the block-tridiagonal
/// matrix M and the limited-power observer.
struct GainLadder {
    int n = 0;
    std::vector<std::pair<double, double>> pairs;

    /// True when every gain entry is strictly positive.
    bool all_positive() const;
    void validate() const;
};

/// The diagonal scaling family for a given (n, ell).
struct DilationSet {
    int n;
    double ell;

    DilationSet(int n, double ell);

    /// diag(ell, ..., ell^n)
    Matrix d_n() const;
    /// diag(ell, ell^2)
    Matrix d2() const;
    /// diag(ell^{n-1}, ..., ell, 1)
    Matrix gamma() const;
    /// d_n / ell^n, entries ell^{i-n}
    Matrix theta() const;
    /// blockdiag of ell^{i-2} d2 for i = 1..n-1, size 2n-2
    Matrix s() const;
};

enum class ObserverKind { standard, limited_power };

/// One observer definition: the classical n-dimensional design with gain
/// vector K_n, or the (2n-2)-dimensional limited-gain-power design with a
/// GainLadder. phi is the (unsaturated) nonlinearity of the plant in
/// observability canonical form; the observer applies saturation at
/// sat_bound to its output.
struct ObserverSpec {
    ObserverKind kind = ObserverKind::standard;
    int n = 0;
    double ell = 1.0;
    std::vector<double> gains; // standard kind: K_n
    GainLadder ladder;         // limited-power kind
    double sat_bound = 1.0;
    std::function<double(const std::vector<double>&)> phi; // may be empty (== 0)

    int state_dim() const { return kind == ObserverKind::standard ? n : 2 * n - 2; }

    /// Checks dimensional consistency, ell >= 1, sat_bound > 0, and
    /// Hurwitzness of the error structure (A - K C or M).
    void validate() const;
};

PrimeTriplet prime_triplet(int n);

/// Block-tridiagonal M of the limited-power design: diagonal blocks
/// E_i = [[-k_i1, 1], [-k_i2, 0]], superdiagonal N = [[0,0],[0,1]],
/// subdiagonal Q_i = [[0, k_i1], [0, k_i2]].
Matrix build_M(const GainLadder& g);

/// Extraction matrices: L1 = blkdiag(C, ..., C, I2) (n rows), and
/// L2 = blkdiag(I2, B^T, ..., B^T).
std::pair<Matrix, Matrix> selectors(int n);

/// Hard clamp of v to [-bound, bound]; bound must be positive.
double saturate(double v, double bound);

/// Right-hand side of the classical high-gain observer,
/// A_n xhat + B_n phi_s(xhat) + D_n(ell) K_n (y - C_n xhat).
std::vector<double> standard_observer_rhs(const ObserverSpec& spec,
                                          const std::vector<double>& xhat, double y);

/// Right-hand side of the limited-power observer: per 2-block,
/// A xi_i + N xi_{i+1} + D2(ell) K_i e_i, with the last block carrying
/// B phi_s(L1 xi); e_1 = y - C xi_1, e_i = B^T xi_{i-1} - C xi_i.
std::vector<double> limited_observer_rhs(const ObserverSpec& spec,
                                         const std::vector<double>& xi, double y);

/// Extract xhat' = L1 xi and xhat'' = L2 xi without forming the matrices.
std::vector<double> extract_l1(int n, const std::vector<double>& xi);
std::vector<double> extract_l2(int n, const std::vector<double>& xi);

} // namespace hgobs::canon
