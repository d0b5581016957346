#pragma once

#include "ustc/cmatrix.hpp"
#include "ustc/rng.hpp"

namespace ustc {

// Unitarity tolerance policy: defect <= 1e-10 is accepted as-is, defects in
// (1e-10, 1e-6] are repaired by polar projection, anything worse is rejected.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kUnitaryRepairTol = 1e-6;

class UnitaryMatrix {
public:
    explicit UnitaryMatrix(CMatrix m);

    int dim() const { return mat_.rows(); }
    const CMatrix& mat() const { return mat_; }

private:
    CMatrix mat_;
};

class SkewHermitian {
public:
    explicit SkewHermitian(CMatrix m);

    // (m - m*)/2, for inputs that are skew-Hermitian up to roundoff.
    static SkewHermitian symmetrized(const CMatrix& m);

    int dim() const { return mat_.rows(); }
    const CMatrix& mat() const { return mat_; }

private:
    SkewHermitian() = default;
    CMatrix mat_;
};

double skew_defect(const CMatrix& m);

// Haar-distributed unitary: complex Gaussian matrix orthonormalized with the
// positive-diagonal triangular factor convention.
UnitaryMatrix random_unitary(int dim, RandomStream& rng);

// Haar frame (T x M orthonormal columns), same construction.
CMatrix random_frame(int T, int M, RandomStream& rng);

// Skew-Hermitian with independent N(0, sigma^2) free parameters: dim real
// diagonal imaginary parts plus dim(dim-1)/2 complex strict-upper entries.
SkewHermitian random_skew_hermitian(int dim, double sigma, RandomStream& rng);

} // namespace ustc
