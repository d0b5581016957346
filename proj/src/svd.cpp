#include "ustc/svd.hpp"

#include <algorithm>
#include <cmath>

namespace ustc {

std::vector<double> singular_values(const CMatrix& m) {
    if (!m.all_finite())
        throw NumericError("singular_values: non-finite input");
    // Work tall: one-sided Jacobi orthogonalizes columns, singular values are
    // the final column norms. sigma(m) == sigma(m*).
    CMatrix a = m.rows() >= m.cols() ? m : m.adjoint();
    const int rows = a.rows();
    const int n = a.cols();
    const double tol = 1e-13;
    const int max_sweeps = 100;

    auto col_dot = [&](int p, int q) {
        cplx s = 0.0;
        for (int i = 0; i < rows; ++i) s += std::conj(a.at(i, p)) * a.at(i, q);
        return s;
    };

    bool converged = (n <= 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double app = std::real(col_dot(p, p));
                const double aqq = std::real(col_dot(q, q));
                const cplx apq = col_dot(p, q);
                const double off = std::abs(apq);
                if (off <= tol * std::sqrt(app * aqq) || off < 1e-300) continue;
                converged = false;
                // Complex Jacobi rotation zeroing the (p,q) Gram entry.
                const cplx phase = apq / off;
                const double tau = (aqq - app) / (2.0 * off);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < rows; ++i) {
                    const cplx vp = a.at(i, p);
                    const cplx vq = a.at(i, q);
                    a.at(i, p) = c * vp - s * std::conj(phase) * vq;
                    a.at(i, q) = s * phase * vp + c * vq;
                }
            }
        }
    }
    if (!converged)
        throw NumericError("singular_values: Jacobi sweeps did not converge");

    std::vector<double> sv(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < rows; ++i) s += std::norm(a.at(i, j));
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

CMatrix project_to_unitary(const CMatrix& m) {
    if (!m.is_square())
        throw ValidationError("project_to_unitary: matrix is not square");
    if (!m.all_finite())
        throw ProjectionFailed("project_to_unitary: non-finite input");
    if (determinant_abs(m) < 1e-300)
        throw ProjectionFailed("project_to_unitary: singular input");
    CMatrix x = m;
    for (int it = 0; it < 100; ++it) {
        CMatrix inv_adj;
        try {
            inv_adj = inverse(x.adjoint());
        } catch (const NumericError&) {
            throw ProjectionFailed("project_to_unitary: iteration hit a singular factor");
        }
        CMatrix next = (x + inv_adj) * cplx(0.5);
        const double step = frobenius_distance(next, x);
        x = next;
        if (step <= 1e-15 * std::max(1.0, frobenius_norm(x))) break;
    }
    if (unitarity_defect(x) > 1e-12)
        throw ProjectionFailed("project_to_unitary: did not converge to a unitary factor");
    return x;
}

} // namespace ustc
