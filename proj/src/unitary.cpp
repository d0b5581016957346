#include "ustc/unitary.hpp"

#include <cmath>

#include "ustc/svd.hpp"

namespace ustc {

UnitaryMatrix::UnitaryMatrix(CMatrix m) : mat_(std::move(m)) {
    if (!mat_.is_square())
        throw ValidationError("UnitaryMatrix: matrix is not square");
    const double defect = unitarity_defect(mat_);
    if (defect > kUnitaryRepairTol)
        throw ValidationError("UnitaryMatrix: unitarity defect above 1e-6");
    if (defect > kUnitaryTol)
        mat_ = project_to_unitary(mat_);
}

double skew_defect(const CMatrix& m) {
    return frobenius_norm(m.adjoint() + m);
}

SkewHermitian::SkewHermitian(CMatrix m) : mat_(std::move(m)) {
    if (!mat_.is_square())
        throw ValidationError("SkewHermitian: matrix is not square");
    if (skew_defect(mat_) > 1e-12)
        throw ValidationError("SkewHermitian: defect above 1e-12");
}

SkewHermitian SkewHermitian::symmetrized(const CMatrix& m) {
    if (!m.is_square())
        throw ValidationError("SkewHermitian: matrix is not square");
    SkewHermitian s;
    s.mat_ = (m - m.adjoint()) * cplx(0.5);
    return s;
}

namespace {

// Gram-Schmidt on Gaussian columns. This is the QR factorization whose
// triangular factor has a positive real diagonal (each r_jj is the residual
// norm), which is exactly the phase convention that makes Q Haar.
CMatrix haar_columns(int rows, int cols, RandomStream& rng) {
    CMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            a.at(i, j) = rng.next_cnormal();
    for (int j = 0; j < cols; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (int i = 0; i < rows; ++i) proj += std::conj(a.at(i, k)) * a.at(i, j);
            for (int i = 0; i < rows; ++i) a.at(i, j) -= proj * a.at(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < rows; ++i) nrm += std::norm(a.at(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            // Essentially impossible for Gaussian draws; resample the column.
            for (int i = 0; i < rows; ++i) a.at(i, j) = rng.next_cnormal();
            --j;
            continue;
        }
        for (int i = 0; i < rows; ++i) a.at(i, j) /= nrm;
    }
    return a;
}

} // namespace

UnitaryMatrix random_unitary(int dim, RandomStream& rng) {
    if (dim < 1)
        throw ValidationError("random_unitary: dim must be >= 1");
    return UnitaryMatrix(haar_columns(dim, dim, rng));
}

CMatrix random_frame(int T, int M, RandomStream& rng) {
    if (T < M || M < 1)
        throw ValidationError("random_frame: need T >= M >= 1");
    return haar_columns(T, M, rng);
}

SkewHermitian random_skew_hermitian(int dim, double sigma, RandomStream& rng) {
    CMatrix s(dim, dim);
    for (int i = 0; i < dim; ++i)
        s.at(i, i) = cplx(0.0, sigma * rng.next_gaussian());
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const cplx z(sigma * rng.next_gaussian(), sigma * rng.next_gaussian());
            s.at(i, j) = z;
            s.at(j, i) = -std::conj(z);
        }
    }
    return SkewHermitian(std::move(s));
}

} // namespace ustc
