#include "hgobs/gainsynth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hgobs/errors.hpp"

namespace hgobs::gains {

namespace {

// Raw (non-monic) coefficient helpers, highest degree first.
std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> add(std::vector<double> a, const std::vector<double>& b, double scale) {
    // a + scale*b, aligning constant terms
    if (b.size() > a.size()) a.insert(a.begin(), b.size() - a.size(), 0.0);
    const size_t off = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[off + j] += scale * b[j];
    return a;
}

} // namespace

Polynomial char_recursion(const Polynomial& p_prev, const Polynomial& p_prevprev, double k1,
                          double k1_prev, double k2) {
    if (p_prev.degree() != p_prevprev.degree() + 2)
        throw std::invalid_argument("char_recursion: deg(p_prev) must be deg(p_prevprev) + 2");
    // lambda (lambda + k1) p_prev
    std::vector<double> out = mul({1.0, k1, 0.0}, p_prev.coeffs());
    // + k2 p_prev
    out = add(std::move(out), p_prev.coeffs(), k2);
    // - k2 lambda (lambda + k1_prev) p_prevprev
    out = add(std::move(out), mul({1.0, k1_prev, 0.0}, p_prevprev.coeffs()), -k2);
    return Polynomial(std::move(out));
}

std::vector<double> lambda_map(const std::vector<double>& m_head, double k1) {
    std::vector<double> x(m_head.size());
    for (size_t j = 0; j < m_head.size(); ++j) {
        x[j] = m_head[j] - k1 * (j == 0 ? 1.0 : x[j - 1]);
        if (!std::isfinite(x[j])) throw std::invalid_argument("lambda_map: non-finite value");
    }
    return x;
}

double sigma1(const std::vector<double>& m_head, double k1) {
    if (m_head.size() < 3 || m_head.size() % 2 == 0)
        throw std::invalid_argument("sigma1: expected odd coefficient count >= 3");
    const std::vector<double> head(m_head.begin(), m_head.end() - 1);
    return k1 * lambda_map(head, k1).back() - m_head.back();
}

Polynomial sigma1_poly(const std::vector<double>& m_head) {
    if (m_head.size() < 3 || m_head.size() % 2 == 0)
        throw std::invalid_argument("sigma1_poly: expected odd coefficient count >= 3");
    const size_t d = m_head.size() - 1; // head length 2i-2
    // x_j(k1) = m_j - k1 x_{j-1}(k1); coefficients low -> high in k1.
    std::vector<double> x{m_head[0], -1.0};
    for (size_t j = 1; j < d; ++j) {
        std::vector<double> next(x.size() + 1, 0.0);
        next[0] = m_head[j];
        for (size_t t = 0; t < x.size(); ++t) next[t + 1] -= x[t];
        x = std::move(next);
    }
    // sigma1 = k1 * x_{2i-2} - m_{2i-1}
    std::vector<double> s(x.size() + 1, 0.0);
    for (size_t t = 0; t < x.size(); ++t) s[t + 1] = x[t];
    s[0] -= m_head.back();
    std::reverse(s.begin(), s.end()); // to highest-first; leading is exactly 1
    return Polynomial(std::move(s));
}

double sigma2(const std::vector<double>& m_full, double k1) {
    if (m_full.size() < 4 || m_full.size() % 2 != 0)
        throw std::invalid_argument("sigma2: expected even coefficient count >= 4");
    const std::vector<double> head(m_full.begin(), m_full.end() - 2);
    const double den = lambda_map(head, k1).back();
    if (std::fabs(den) < 1e-12)
        throw numeric_error("sigma2: degenerate stage, |denominator| < 1e-12");
    return m_full.back() / den;
}

BasicAssignResult basic_assign(const Polynomial& target) {
    const int deg = target.degree();
    if (deg < 4 || deg % 2 != 0)
        throw std::invalid_argument("basic_assign: target degree must be even and >= 4");
    const std::vector<double> m = target.tail(); // m_1 .. m_2i
    const std::vector<double> head(m.begin(), m.end() - 2);
    const std::vector<double> sigma1_input(m.begin(), m.end() - 1);

    const std::vector<double> candidates = num::real_roots(sigma1_poly(sigma1_input));
    if (candidates.empty())
        throw numeric_error("basic_assign: sigma1 has no real root numerically");

    // Selection: prefer k1 > 0 with sigma2 > 0 (smallest such k1); fall
    // back to the real root of smallest magnitude with a valid sigma2.
    bool have = false, have_pos = false;
    double best_k1 = 0.0, best_k2 = 0.0;
    for (double k1 : candidates) {
        double k2;
        try {
            k2 = sigma2(m, k1);
        } catch (const numeric_error&) {
            continue;
        }
        const bool pos = k1 > 0.0 && k2 > 0.0;
        bool better;
        if (!have)
            better = true;
        else if (pos != have_pos)
            better = pos;
        else if (pos)
            better = k1 < best_k1;
        else
            better = std::fabs(k1) < std::fabs(best_k1);
        if (better) {
            best_k1 = k1;
            best_k2 = k2;
            have = true;
            have_pos = pos;
        }
    }
    if (!have) throw numeric_error("basic_assign: all sigma1 roots give a degenerate sigma2");

    BasicAssignResult res;
    res.k1 = best_k1;
    res.k2 = best_k2;
    res.k1_candidates = candidates;
    res.sigma1_residual = std::fabs(sigma1(sigma1_input, best_k1));
    res.reduced = Polynomial::from_tail(lambda_map(head, best_k1));
    return res;
}

AssignmentReport assign_gains(const Polynomial& target) {
    const int deg = target.degree();
    if (deg < 2 || deg % 2 != 0)
        throw std::invalid_argument("assign_gains: target degree must be even and >= 2");
    const int n = deg / 2 + 1;

    AssignmentReport report{target,
                            GainLadder{n, std::vector<std::pair<double, double>>(
                                              static_cast<size_t>(n - 1))},
                            {},
                            0.0,
                            false,
                            num::is_hurwitz(target)};

    Polynomial current = target;
    for (int i = n - 1; i >= 2; --i) {
        BasicAssignResult stage;
        try {
            stage = basic_assign(current);
        } catch (const numeric_error& e) {
            throw numeric_error("assign_gains: stage " + std::to_string(i) + " failed: " +
                                e.what());
        }
        report.ladder.pairs[static_cast<size_t>(i - 1)] = {stage.k1, stage.k2};
        report.steps.push_back(
            {i, stage.k1, stage.k2, stage.k1_candidates, stage.sigma1_residual, stage.reduced});
        current = stage.reduced;
    }
    // Base case: lambda^2 + k_11 lambda + k_12 = remaining quadratic.
    report.ladder.pairs[0] = {current.tail()[0], current.tail()[1]};

    const Polynomial achieved = num::char_poly(canon::build_M(report.ladder));
    double resid = 0.0, scale = 0.0;
    for (size_t j = 0; j < achieved.coeffs().size(); ++j) {
        resid = std::max(resid, std::fabs(achieved.coeffs()[j] - target.coeffs()[j]));
        scale = std::max(scale, std::fabs(target.coeffs()[j]));
    }
    report.verification_residual = resid;
    report.positivity = report.ladder.all_positive();
    if (resid > 1e-6 * (1.0 + scale))
        throw numeric_error("assign_gains: verification residual " + std::to_string(resid) +
                            " exceeds tolerance");
    return report;
}

} // namespace hgobs::gains
