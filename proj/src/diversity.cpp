#include "ustc/diversity.hpp"

#include <algorithm>
#include <cmath>

#include "ustc/quadrature.hpp"
#include "ustc/svd.hpp"

namespace ustc {

ChannelConfig::ChannelConfig(int T_, int M_, int N_, double rho_)
    : T(T_), M(M_), N(N_), rho(rho_) {
    if (M < 1 || T < M) throw ValidationError("ChannelConfig: need T >= M >= 1");
    if (N < 1) throw ValidationError("ChannelConfig: need N >= 1");
    if (!(rho > 0.0)) throw ValidationError("ChannelConfig: need rho > 0");
}

double ChannelConfig::rho_tilde() const {
    const double x = rho * T / M;
    return x * x / (4.0 * (1.0 + x));
}

namespace {

// Clamp to [lo, hi] with slack 1e-9; larger excursions are numeric failures.
double strict_clamp(double v, double lo, double hi, const char* what) {
    if (v < lo - 1e-9 || v > hi + 1e-9)
        throw NumericError(std::string(what) + ": value outside admissible range");
    return std::min(hi, std::max(lo, v));
}

void require_pairs(const Constellation& c) {
    if (c.size() < 2)
        throw ValidationError("diversity metrics need a constellation with L >= 2");
}

void require_cfg_match(const Constellation& c, const ChannelConfig& cfg) {
    if (cfg.T != c.T || cfg.M != c.M)
        throw ValidationError("ChannelConfig (T, M) does not match the constellation");
}

CMatrix cross_gram(const Constellation& c, int l, int lp) {
    const CMatrix& a = c.elements[static_cast<std::size_t>(l)];
    const CMatrix& b = c.elements[static_cast<std::size_t>(lp)];
    if (c.form == Form::General) return a.adjoint() * b;
    // Special form: Phi_l^* Phi_l' = (I + Psi_l^* Psi_l')/2.
    CMatrix g = a.adjoint() * b;
    for (int i = 0; i < c.M; ++i) g.at(i, i) += 1.0;
    return g * cplx(0.5);
}

} // namespace

double product_from_difference(const CMatrix& d, int M) {
    return 0.5 * std::pow(determinant_abs(d), 1.0 / M);
}

double sum_from_difference(const CMatrix& d, int M) {
    return frobenius_norm(d) / (2.0 * std::sqrt(static_cast<double>(M)));
}

double product_from_cross_gram(const CMatrix& g) {
    // prod_m (1 - delta_m^2) = det(I - G* G); the determinant route avoids
    // the cancellation in forming 1 - delta^2 from a computed delta near 1.
    const int M = g.rows();
    CMatrix h = g.adjoint() * g;
    h *= cplx(-1.0);
    for (int i = 0; i < M; ++i) h.at(i, i) += 1.0;
    const double d = determinant_abs(h);
    return std::pow(std::max(0.0, d), 1.0 / (2.0 * M));
}

double sum_from_cross_gram(const CMatrix& g) {
    const double f2 = frobenius_norm(g);
    const double v = 1.0 - f2 * f2 / g.rows();
    return std::sqrt(strict_clamp(v, 0.0, 1.0, "diversity sum argument"));
}

std::vector<double> deltas_from_cross_gram(const CMatrix& g) {
    std::vector<double> d = singular_values(g);
    for (double& s : d) s = strict_clamp(s, 0.0, 1.0, "singular value of Phi*Phi'");
    return d;
}

std::vector<double> deltas_from_difference(const CMatrix& d) {
    // 1 - delta^2(Phi*Phi') = delta^2(Psi - Psi')/4, as multisets.
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(d.rows()));
    for (double s : singular_values(d)) {
        const double sd = strict_clamp(s, 0.0, 2.0, "singular value of Psi - Psi'");
        out.push_back(std::sqrt(std::max(0.0, 1.0 - 0.25 * sd * sd)));
    }
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

std::vector<double> pair_deltas(const Constellation& c, int l, int lp) {
    return deltas_from_cross_gram(cross_gram(c, l, lp));
}

DiversityReport diversity_report(const Constellation& c) {
    require_pairs(c);
    const int L = c.size();
    DiversityReport rep;
    rep.product = 2.0; // above any admissible value
    rep.sum = 2.0;
    rep.pairwise_count = static_cast<long>(L) * (L - 1) / 2;
    for (int l = 0; l < L; ++l) {
        for (int lp = l + 1; lp < L; ++lp) {
            double prod, sum;
            if (c.form == Form::Special) {
                const CMatrix d = c.elements[static_cast<std::size_t>(l)] -
                                  c.elements[static_cast<std::size_t>(lp)];
                prod = product_from_difference(d, c.M);
                sum = sum_from_difference(d, c.M);
            } else {
                const CMatrix g = cross_gram(c, l, lp);
                prod = product_from_cross_gram(g);
                sum = sum_from_cross_gram(g);
            }
            prod = strict_clamp(prod, 0.0, 1.0, "diversity product");
            sum = strict_clamp(sum, 0.0, 1.0, "diversity sum");
            if (prod < rep.product) {
                rep.product = prod;
                rep.argmin_product = {l, lp};
            }
            if (sum < rep.sum) {
                rep.sum = sum;
                rep.argmin_sum = {l, lp};
            }
        }
    }
    return rep;
}

double diversity_product(const Constellation& c) { return diversity_report(c).product; }
double diversity_sum(const Constellation& c) { return diversity_report(c).sum; }

double pair_chernoff(const std::vector<double>& deltas, const ChannelConfig& cfg) {
    const double rt = cfg.rho_tilde();
    double log_den = 0.0;
    for (double d : deltas) log_den += std::log1p(rt * (1.0 - d * d));
    return 0.5 * std::exp(-cfg.N * log_den);
}

double pair_exact(const std::vector<double>& deltas, const ChannelConfig& cfg) {
    const double rt = cfg.rho_tilde();
    std::vector<double> coef(deltas.size());
    for (std::size_t m = 0; m < deltas.size(); ++m)
        coef[m] = rt * (1.0 - deltas[m] * deltas[m]);
    const int N = cfg.N;
    auto integrand = [&](double theta) {
        const double c = std::cos(theta);
        const double cc = c * c;
        double v = 1.0;
        for (double cm : coef) {
            const double f = cc / (cc + cm);
            double fn = 1.0;
            for (int k = 0; k < N; ++k) fn *= f;
            v *= fn;
        }
        return v;
    };
    const double integral = adaptive_simpson(integrand, -M_PI / 2.0, M_PI / 2.0, 1e-10, 40);
    return integral / (2.0 * M_PI);
}

double chernoff_diversity(const Constellation& c, const ChannelConfig& cfg) {
    require_pairs(c);
    require_cfg_match(c, cfg);
    const int L = c.size();
    double worst = 0.0;
    for (int l = 0; l < L; ++l)
        for (int lp = l + 1; lp < L; ++lp)
            worst = std::max(worst, pair_chernoff(pair_deltas(c, l, lp), cfg));
    return worst;
}

double exact_diversity(const Constellation& c, const ChannelConfig& cfg) {
    require_pairs(c);
    require_cfg_match(c, cfg);
    const int L = c.size();
    double worst = 0.0;
    for (int l = 0; l < L; ++l) {
        for (int lp = l + 1; lp < L; ++lp) {
            const auto deltas = pair_deltas(c, l, lp);
            // The Chernoff value bounds the integral from above, so pairs
            // that cannot beat the current maximum are skipped untouched.
            if (pair_chernoff(deltas, cfg) <= worst) continue;
            worst = std::max(worst, pair_exact(deltas, cfg));
        }
    }
    return worst;
}

std::vector<CurvePoint> diversity_function_curve(const Constellation& c, int N,
                                                 const std::vector<double>& rho_db_grid,
                                                 bool exact) {
    if (rho_db_grid.empty())
        throw ValidationError("diversity curve: empty rho grid");
    for (std::size_t i = 1; i < rho_db_grid.size(); ++i)
        if (!(rho_db_grid[i] > rho_db_grid[i - 1]))
            throw ValidationError("diversity curve: rho grid must be strictly increasing");
    std::vector<CurvePoint> out;
    out.reserve(rho_db_grid.size());
    for (double db : rho_db_grid) {
        const ChannelConfig cfg(c.T, c.M, N, db_to_linear(db));
        const double v = exact ? exact_diversity(c, cfg) : chernoff_diversity(c, cfg);
        out.push_back({db, cfg.rho, v});
    }
    return out;
}

} // namespace ustc
