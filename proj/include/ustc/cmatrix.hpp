#pragma once

#include <complex>
#include <vector>

#include "ustc/errors.hpp"

namespace ustc {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Everything in this project is tiny
// (dimensions <= ~16), so the implementation favors clarity and robustness
// over asymptotics.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}
    CMatrix(int rows, int cols, std::vector<cplx> entries);

    static CMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
    const cplx& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& entries() const { return e_; }
    std::vector<cplx>& entries() { return e_; }

    CMatrix adjoint() const;
    bool all_finite() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> e_;
};

double frobenius_norm(const CMatrix& m);
double frobenius_distance(const CMatrix& a, const CMatrix& b);

// Allocation-free kernels for optimizer inner loops; `out` is resized as
// needed and must not alias the inputs.
void multiply_into(CMatrix& out, const CMatrix& a, const CMatrix& b);
void difference_into(CMatrix& out, const CMatrix& a, const CMatrix& b);
void identity_minus_into(CMatrix& out, const CMatrix& a);

// |det m| via LU with partial pivoting; returns 0 for a singular matrix.
double determinant_abs(const CMatrix& m);

// Solves a x = b (a square). Throws NumericError if a is numerically singular.
CMatrix solve(const CMatrix& a, const CMatrix& b);
CMatrix inverse(const CMatrix& a);

// Cayley transform (I + y)^{-1} (I - y). An involution; maps skew-Hermitian
// matrices to unitaries and back. Throws CayleySingular when I + y has
// condition estimate above 1e12 (eigenvalue of y near -1).
CMatrix cayley(const CMatrix& y);

// Frobenius condition estimate ||a||_F * ||a^{-1}||_F (infinite when singular).
double condition_estimate(const CMatrix& a);

// Largest |a_ij - b_ij|-style distance measured in Frobenius norm against
// identity: ||m* m - I||_F. The unitarity defect used across the project.
double unitarity_defect(const CMatrix& m);

} // namespace ustc
