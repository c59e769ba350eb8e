#include "hgobs/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hgobs/errors.hpp"

namespace hgobs::num {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_like(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

} // namespace

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("Matrix: entry count does not match dimensions");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::column(const std::vector<double>& v) {
    return Matrix(static_cast<int>(v.size()), 1, v);
}

Matrix Matrix::row(const std::vector<double>& v) {
    return Matrix(1, static_cast<int>(v.size()), v);
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("Matrix+: shape mismatch");
    Matrix out = *this;
    for (size_t k = 0; k < data_.size(); ++k) out.data_[k] += rhs.data_[k];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("Matrix-: shape mismatch");
    Matrix out = *this;
    for (size_t k = 0; k < data_.size(); ++k) out.data_[k] -= rhs.data_[k];
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix*: shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

Matrix Matrix::operator*(double s) const {
    Matrix out = *this;
    for (double& v : out.data_) v *= s;
    return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    *this = *this + rhs;
    return *this;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

double Matrix::frobenius() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

bool Matrix::finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix operator*(double s, const Matrix& m) { return m * s; }

Matrix solve(const Matrix& a, const Matrix& b) {
    if (!a.square()) throw std::invalid_argument("solve: matrix must be square");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: rhs row mismatch");
    const int n = a.rows();
    Matrix lu = a;
    Matrix x = b;
    const double scale = std::max(lu.max_abs(), 1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(lu(r, col)) > std::fabs(lu(piv, col))) piv = r;
        if (std::fabs(lu(piv, col)) <= n * kEps * scale)
            throw numeric_error("solve: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
            for (int j = 0; j < x.cols(); ++j) std::swap(x(col, j), x(piv, j));
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = lu(r, col) / lu(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
            for (int j = 0; j < x.cols(); ++j) x(r, j) -= f * x(col, j);
        }
    }
    for (int col = n - 1; col >= 0; --col)
        for (int j = 0; j < x.cols(); ++j) {
            double s = x(col, j);
            for (int k = col + 1; k < n; ++k) s -= lu(col, k) * x(k, j);
            x(col, j) = s / lu(col, col);
        }
    return x;
}

std::vector<Complex> solve_shifted(const Matrix& a, Complex shift, const Matrix& b) {
    if (!a.square()) throw std::invalid_argument("solve_shifted: matrix must be square");
    if (a.rows() != b.rows() || b.cols() != 1)
        throw std::invalid_argument("solve_shifted: rhs must be a matching column");
    const int n = a.rows();
    std::vector<Complex> m(static_cast<size_t>(n) * n);
    std::vector<Complex> x(n);
    auto at = [&m, n](int i, int j) -> Complex& { return m[static_cast<size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) at(i, j) = -a(i, j);
        at(i, i) += shift;
        x[i] = b(i, 0);
    }
    double scale = 0.0;
    for (const Complex& v : m) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        if (std::abs(at(piv, col)) <= n * kEps * scale)
            throw numeric_error("solve_shifted: singular shifted matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(at(col, j), at(piv, j));
            std::swap(x[col], x[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            const Complex f = at(r, col) / at(col, col);
            if (f == Complex{}) continue;
            for (int j = col; j < n; ++j) at(r, j) -= f * at(col, j);
            x[r] -= f * x[col];
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        Complex s = x[col];
        for (int k = col + 1; k < n; ++k) s -= at(col, k) * x[k];
        x[col] = s / at(col, col);
    }
    return x;
}

namespace {

// Orthogonal (Householder) reduction to upper Hessenberg form, in place.
void hessenberg(Matrix& a) {
    const int n = a.rows();
    const double scale = std::max(a.max_abs(), 1.0);
    std::vector<double> v(n);
    for (int k = 0; k + 2 < n; ++k) {
        double col_norm = 0.0;
        for (int i = k + 1; i < n; ++i) col_norm += a(i, k) * a(i, k);
        col_norm = std::sqrt(col_norm);
        if (col_norm <= n * kEps * scale) {
            for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
            continue;
        }
        const double alpha = -sign_like(col_norm, a(k + 1, k));
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        for (int j = k; j < n; ++j) {
            double dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += v[i] * a(i, j);
            const double f = 2.0 * dot / vnorm2;
            for (int i = k + 1; i < n; ++i) a(i, j) -= f * v[i];
        }
        for (int i = 0; i < n; ++i) {
            double dot = 0.0;
            for (int j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            const double f = 2.0 * dot / vnorm2;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * v[j];
        }
        a(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

// Eigenvalues of a real upper Hessenberg matrix: implicitly shifted
// double-step QR (Francis) with the trailing-2x2 shift pair, exceptional
// shifts every 10 stalled iterations, and a hard global iteration cap.
ComplexList hqr(Matrix& a, int iter_cap) {
    const int n = a.rows();
    ComplexList out;
    out.reserve(n);

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(a(i, j));
    if (anorm == 0.0) anorm = 1.0;

    int nn = n - 1;
    int total_its = 0;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 1; --l) {
                const double s0 = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                const double s = (s0 == 0.0) ? anorm : s0;
                if (std::fabs(a(l, l - 1)) <= kEps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = a(nn, nn);
            if (l == nn) {
                out.emplace_back(x + t, 0.0);
                --nn;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    const double q = p * p + w;
                    double z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_like(z, p);
                        out.emplace_back(x + z, 0.0);
                        out.emplace_back((z != 0.0) ? x - w / z : x + z, 0.0);
                    } else {
                        out.emplace_back(x + p, z);
                        out.emplace_back(x + p, -z);
                    }
                    nn -= 2;
                } else {
                    if (++total_its > iter_cap)
                        throw numeric_error("eigvals: QR iteration did not converge");
                    if (its != 0 && its % 10 == 0) {
                        // exceptional shift
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        const double s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    double p = 0.0, q = 0.0, r = 0.0;
                    for (m = nn - 2; m >= l; --m) {
                        const double z = a(m, m);
                        const double r0 = x - z;
                        const double s0 = y - z;
                        p = (r0 * s0 - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r0 - s0;
                        r = a(m + 2, m + 1);
                        const double s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        const double v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) + std::fabs(z) +
                                                         std::fabs(a(m + 1, m + 1)));
                        if (u <= kEps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        double xs = 0.0;
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
                            xs = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (xs != 0.0) {
                                p /= xs;
                                q /= xs;
                                r /= xs;
                            }
                        }
                        const double s = sign_like(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * xs;
                        }
                        p += s;
                        const double xf = p / s;
                        const double yf = q / s;
                        const double zf = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            double pj = a(k, j) + q * a(k + 1, j);
                            if (k != nn - 1) {
                                pj += r * a(k + 2, j);
                                a(k + 2, j) -= pj * zf;
                            }
                            a(k + 1, j) -= pj * yf;
                            a(k, j) -= pj * xf;
                        }
                        const int mmin = std::min(nn, k + 3);
                        for (int i = l; i <= mmin; ++i) {
                            double pi = xf * a(i, k) + yf * a(i, k + 1);
                            if (k != nn - 1) {
                                pi += zf * a(i, k + 2);
                                a(i, k + 2) -= pi * r;
                            }
                            a(i, k + 1) -= pi * q;
                            a(i, k) -= pi;
                        }
                    }
                }
            }
        } while (l < nn - 1 && nn >= 0);
    }
    return out;
}

} // namespace

ComplexList eigvals(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("eigvals: matrix must be square");
    if (!m.finite()) throw std::invalid_argument("eigvals: non-finite entries");
    const int n = m.rows();
    if (n == 0) return {};
    if (n == 1) return {Complex(m(0, 0), 0.0)};
    Matrix h = m;
    hessenberg(h);
    ComplexList ev = hqr(h, 100 * n);
    std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

bool is_hurwitz_matrix(const Matrix& m) {
    for (const Complex& ev : eigvals(m))
        if (ev.real() >= 0.0) return false;
    return true;
}

Matrix solve_lyapunov(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("solve_lyapunov: matrix must be square");
    const int n = m.rows();
    const int nu = n * (n + 1) / 2;
    auto idx = [n](int a, int b) {
        // upper-triangle index, a <= b
        return a * n - a * (a - 1) / 2 + (b - a);
    };
    Matrix sys(nu, nu);
    Matrix rhs(nu, 1);
    int eq = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++eq) {
            for (int k = 0; k < n; ++k) {
                // (P M)_{ij}: coefficient M(k, j) multiplies P_{ik}
                sys(eq, idx(std::min(i, k), std::max(i, k))) += m(k, j);
                // (M^T P)_{ij}: coefficient M(k, i) multiplies P_{kj}
                sys(eq, idx(std::min(k, j), std::max(k, j))) += m(k, i);
            }
            rhs(eq, 0) = (i == j) ? -1.0 : 0.0;
        }
    Matrix p_vec(nu, 1);
    try {
        p_vec = solve(sys, rhs);
    } catch (const numeric_error&) {
        throw numeric_error(
            "solve_lyapunov: singular system (matrix not Hurwitz or has mirrored eigenvalues)");
    }
    Matrix p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) p(i, j) = p(j, i) = p_vec(idx(i, j), 0);
    const Matrix residual = p * m + m.transpose() * p + Matrix::identity(n);
    if (residual.max_abs() > 1e-8 * n)
        throw numeric_error("solve_lyapunov: residual check failed");
    return p;
}

bool cholesky(const Matrix& m, Matrix* factor) {
    if (!m.square()) throw std::invalid_argument("cholesky: matrix must be square");
    const int n = m.rows();
    Matrix l(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    if (factor) *factor = l;
    return true;
}

} // namespace hgobs::num
