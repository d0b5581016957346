#include "ustc/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace ustc {

CMatrix::CMatrix(int rows, int cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != static_cast<std::size_t>(rows) * cols)
        throw ValidationError("CMatrix: entries length does not match rows*cols");
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(j, i) = std::conj(at(i, j));
    return r;
}

bool CMatrix::all_finite() const {
    for (const auto& z : e_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ValidationError("CMatrix: shape mismatch in +");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ValidationError("CMatrix: shape mismatch in -");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& z : e_) z *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_)
        throw ValidationError("CMatrix: shape mismatch in *");
    CMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols_; ++j)
                r.at(i, j) += aik * b.at(k, j);
        }
    }
    return r;
}

void multiply_into(CMatrix& out, const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw ValidationError("multiply_into: shape mismatch");
    if (out.rows() != a.rows() || out.cols() != b.cols()) out = CMatrix(a.rows(), b.cols());
    std::fill(out.entries().begin(), out.entries().end(), cplx{});
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a.at(i, k);
            for (int j = 0; j < b.cols(); ++j)
                out.at(i, j) += aik * b.at(k, j);
        }
}

void difference_into(CMatrix& out, const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("difference_into: shape mismatch");
    if (out.rows() != a.rows() || out.cols() != a.cols()) out = CMatrix(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.entries().size(); ++i)
        out.entries()[i] = a.entries()[i] - b.entries()[i];
}

void identity_minus_into(CMatrix& out, const CMatrix& a) {
    if (out.rows() != a.rows() || out.cols() != a.cols()) out = CMatrix(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.at(i, j) = (i == j ? cplx{1.0} : cplx{}) - a.at(i, j);
}

double frobenius_norm(const CMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("frobenius_distance: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        s += std::norm(a.entries()[i] - b.entries()[i]);
    return std::sqrt(s);
}

namespace {

// In-place LU with partial pivoting on a working copy. Returns the product
// of |pivots|, or 0 when a pivot underflows.
double lu_abs_det(CMatrix a) {
    const int n = a.rows();
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a.at(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) return 0.0;
        if (piv != k)
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
        det *= std::abs(a.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const cplx f = a.at(i, k) / a.at(k, k);
            a.at(i, k) = f;
            for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
        }
    }
    return det;
}

} // namespace

double determinant_abs(const CMatrix& m) {
    if (!m.is_square())
        throw ValidationError("determinant_abs: matrix is not square");
    switch (m.rows()) {
        case 0: return 1.0;
        case 1: return std::abs(m.at(0, 0));
        case 2: return std::abs(m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0));
        case 3:
            return std::abs(m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
                            m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
                            m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0)));
        default: return lu_abs_det(m);
    }
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
    if (!a.is_square() || a.rows() != b.rows())
        throw ValidationError("solve: shape mismatch");
    const int n = a.rows();
    const int m = b.cols();
    CMatrix lu = a;
    CMatrix x = b;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu.at(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best < 1e-300)
            throw NumericError("solve: numerically singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu.at(k, j), lu.at(piv, j));
            for (int j = 0; j < m; ++j) std::swap(x.at(k, j), x.at(piv, j));
        }
        for (int i = k + 1; i < n; ++i) {
            const cplx f = lu.at(i, k) / lu.at(k, k);
            lu.at(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu.at(i, j) -= f * lu.at(k, j);
            for (int j = 0; j < m; ++j) x.at(i, j) -= f * x.at(k, j);
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        for (int j = 0; j < m; ++j) {
            cplx s = x.at(k, j);
            for (int i = k + 1; i < n; ++i) s -= lu.at(k, i) * x.at(i, j);
            x.at(k, j) = s / lu.at(k, k);
        }
    }
    return x;
}

CMatrix inverse(const CMatrix& a) {
    return solve(a, CMatrix::identity(a.rows()));
}

double condition_estimate(const CMatrix& a) {
    try {
        return frobenius_norm(a) * frobenius_norm(inverse(a));
    } catch (const NumericError&) {
        return std::numeric_limits<double>::infinity();
    }
}

CMatrix cayley(const CMatrix& y) {
    if (!y.is_square())
        throw ValidationError("cayley: matrix is not square");
    if (!y.all_finite())
        throw NumericError("cayley: non-finite input");
    const int n = y.rows();
    const CMatrix id = CMatrix::identity(n);
    const CMatrix ipy = id + y;
    // Solve against [I - y | I] at once; the second block gives the inverse
    // used for the condition estimate.
    CMatrix rhs(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            rhs.at(i, j) = (i == j ? 1.0 : 0.0) - y.at(i, j);
            rhs.at(i, n + j) = (i == j ? 1.0 : 0.0);
        }
    }
    CMatrix sol;
    try {
        sol = solve(ipy, rhs);
    } catch (const NumericError&) {
        throw CayleySingular("cayley: I + Y is singular (eigenvalue of Y at -1)");
    }
    double inv_norm_sq = 0.0;
    CMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.at(i, j) = sol.at(i, j);
            inv_norm_sq += std::norm(sol.at(i, n + j));
        }
    }
    const double cond = frobenius_norm(ipy) * std::sqrt(inv_norm_sq);
    if (!(cond <= 1e12))
        throw CayleySingular("cayley: I + Y condition estimate above 1e12");
    if (!out.all_finite())
        throw NumericError("cayley: non-finite result");
    return out;
}

double unitarity_defect(const CMatrix& m) {
    const CMatrix g = m.adjoint() * m;
    return frobenius_distance(g, CMatrix::identity(m.cols()));
}

} // namespace ustc
