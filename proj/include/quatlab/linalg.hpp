#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace quatlab {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    /// Writes `b` into this matrix with its (0,0) entry at (r0,c0).
    void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);
    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;

    double norm_fro() const;
    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

/// Matrix product (schoolbook; all matrices here are at most 8x8).
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

/// Max entrywise |a - b|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Tolerances and caps for the iterative kernels. Tests reference these
// directly; change them here rather than at call sites.
inline constexpr double kEigDeflationTol = 1e-14;
inline constexpr int kEigMaxIterPerDim = 100;
inline constexpr double kSvdOffdiagTol = 1e-14;
inline constexpr int kSvdMaxSweeps = 64;

/// Eigenvalues of a square complex matrix, with multiplicity, sorted by
/// modulus descending and argument ascending within equal modulus.
///
/// Algorithm: radix-2 balancing, Householder reduction to upper Hessenberg,
/// then explicitly shifted QR with Wilkinson shifts and deflation. Iteration
/// count is capped at kEigMaxIterPerDim * n; exceeding the cap throws
/// std::runtime_error rather than returning unconverged values.
std::vector<Complex> eig(const ComplexMatrix& a);

struct SvdResult {
    ComplexMatrix u;             ///< unitary factor, left
    std::vector<double> sigma;   ///< singular values, descending
    ComplexMatrix v;             ///< unitary factor, right; a = u * diag(sigma) * dagger(v)
};

/// Singular value decomposition by cyclic one-sided Jacobi rotations on
/// columns. Convergence: every column pair passes the relative off-diagonal
/// test |<a_p, a_q>| <= kSvdOffdiagTol * ||a_p|| * ||a_q||. Deterministic
/// sweep order, no randomness. Throws std::runtime_error if the sweep cap is
/// exceeded.
SvdResult svd(const ComplexMatrix& a);

/// Sum of singular values.
double nuclear_norm(const ComplexMatrix& a);

/// Determinant by partial-pivot LU.
Complex det(const ComplexMatrix& a);

std::string to_string(const ComplexMatrix& a);

}  // namespace quatlab
