#pragma once

#include <complex>
#include <vector>

namespace hgobs::num {

using Complex = std::complex<double>;

/// Eigenvalue and root containers. Lists produced from real matrices or
/// real polynomials are closed under complex conjugation.
using ComplexList = std::vector<Complex>;

/// Dense real matrix, row-major storage, value semantics.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);
    Matrix(int rows, int cols, std::vector<double> entries);

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<double>& d);
    static Matrix column(const std::vector<double>& v);
    static Matrix row(const std::vector<double>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Matrix transpose() const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator*(double s) const;
    Matrix& operator+=(const Matrix& rhs);

    /// Largest absolute entry.
    double max_abs() const;
    /// Frobenius norm.
    double frobenius() const;
    /// True if every entry is finite.
    bool finite() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(double s, const Matrix& m);

/// Solve a x = b by LU with partial pivoting; b may have several columns.
/// Throws numeric_error on a (numerically) singular pivot.
Matrix solve(const Matrix& a, const Matrix& b);

/// Solve (shift*I - a) x = b in complex arithmetic; b is a real column.
/// Used for frequency responses at shift = i*omega.
std::vector<Complex> solve_shifted(const Matrix& a, Complex shift, const Matrix& b);

/// All eigenvalues via Householder-Hessenberg reduction followed by
/// implicitly shifted QR (Francis steps with the trailing-2x2 Wilkinson
/// shift pair), iteration cap 100*size. The result is conjugate-closed:
/// complex eigenvalues come from 2x2 Schur blocks in exact pairs.
ComplexList eigvals(const Matrix& m);

/// True if every eigenvalue has strictly negative real part.
bool is_hurwitz_matrix(const Matrix& m);

/// Solve P m + m^T P = -I for symmetric positive definite P, as a dense
/// linear system over the n(n+1)/2 upper-triangle unknowns. Throws
/// numeric_error if the system is singular (m not Hurwitz or with
/// mirrored eigenvalues).
Matrix solve_lyapunov(const Matrix& m);

/// Cholesky factorization attempt; returns false if m (assumed symmetric)
/// is not positive definite.
bool cholesky(const Matrix& m, Matrix* factor = nullptr);

} // namespace hgobs::num
