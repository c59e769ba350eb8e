#pragma once

#include <vector>

#include "hgobs/canon.hpp"
#include "hgobs/polynomial.hpp"

namespace hgobs::gains {

using canon::GainLadder;
using num::Polynomial;

/// One stage of the recursive assignment: the chosen pair, the real
/// sigma1 candidates it was picked from, and the reduced target handed to
/// the next stage.
struct AssignmentStep {
    int stage; // i, counting stages from n-1 down to 2
    double k1;
    double k2;
    std::vector<double> k1_candidates;
    double sigma1_residual;
    Polynomial reduced;
};

struct AssignmentReport {
    Polynomial target;
    GainLadder ladder;
    std::vector<AssignmentStep> steps;
    double verification_residual; // max |char_poly(build_M) - target| coefficient
    bool positivity;              // all ladder entries > 0
    bool target_hurwitz;          // warning-only; assignment proceeds regardless
};

/// Characteristic-polynomial recursion of the nested matrices M_i:
/// P_i = lambda (lambda + k1) P_{i-1} + k2 [P_{i-1} - lambda (lambda + k1_prev) P_{i-2}].
/// Requires deg(p_prev) = deg(p_prevprev) + 2; both monic. This is the
/// independent oracle for build_M.
Polynomial char_recursion(const Polynomial& p_prev, const Polynomial& p_prevprev, double k1,
                          double k1_prev, double k2);

/// Solves (I + k1 F) x = m_head - k1 v1 by forward substitution, F the
/// down-shift; invertible for every k1.
std::vector<double> lambda_map(const std::vector<double>& m_head, double k1);

/// sigma1(m_[1,2i-1], k1) = k1 * last(lambda_map(m_[1,2i-2], k1)) - m_{2i-1}.
/// As a function of k1 it is a monic polynomial of odd degree 2i-1.
double sigma1(const std::vector<double>& m_head, double k1);

/// The coefficient form of sigma1 in k1, built by polynomial-valued
/// forward substitution (exact in the coefficients).
Polynomial sigma1_poly(const std::vector<double>& m_head);

/// sigma2(m_[1,2i], k1) = m_{2i} / last(lambda_map(m_[1,2i-2], k1));
/// throws numeric_error when the denominator is below 1e-12.
double sigma2(const std::vector<double>& m_full, double k1);

struct BasicAssignResult {
    double k1;
    double k2;
    std::vector<double> k1_candidates;
    double sigma1_residual;
    Polynomial reduced;
};

/// Basic assignment algorithm for one stage: pick k_i1 as a real root of
/// sigma1 (preferring k1 > 0 with sigma2 > 0, then smallest positive k1;
/// otherwise smallest |k1|), set k_i2 = sigma2, and peel off the reduced
/// degree-(2i-2) target. Requires a monic target of even degree >= 4.
BasicAssignResult basic_assign(const Polynomial& target);

/// Full Appendix-style ladder synthesis: iterate basic_assign from stage
/// n-1 down to 2, then read K_1 off the remaining quadratic. The result
/// is verified against char_poly(build_M(ladder)).
AssignmentReport assign_gains(const Polynomial& target);

} // namespace hgobs::gains
