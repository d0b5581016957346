#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "ustc/constellation.hpp"

namespace ustc {

struct ChannelConfig {
    int T = 4;
    int M = 2;
    int N = 2;
    double rho = 1.0; // linear SNR

    ChannelConfig() = default;
    ChannelConfig(int T_, int M_, int N_, double rho_);

    // (rho T / M)^2 / (4 (1 + rho T / M)), the factor multiplying
    // (1 - delta_m^2) in the pairwise error expressions.
    double rho_tilde() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct DiversityReport {
    double product = 0.0;
    double sum = 0.0;
    std::pair<int, int> argmin_product{-1, -1};
    std::pair<int, int> argmin_sum{-1, -1};
    long pairwise_count = 0;
};

// Diversity product and sum with the achieving pairs, all pairs scanned once.
// Special form uses the determinant / Frobenius closed forms; general form
// goes through the singular values of Phi_l^* Phi_l'.
DiversityReport diversity_report(const Constellation& c);
double diversity_product(const Constellation& c);
double diversity_sum(const Constellation& c);

// delta_m(Phi_l^* Phi_l'), descending, clamped to [0, 1].
std::vector<double> pair_deltas(const Constellation& c, int l, int lp);

// Chernoff pairwise bound (1/2) prod_m [1 + rho_tilde (1 - delta_m^2)]^{-N}.
double pair_chernoff(const std::vector<double>& deltas, const ChannelConfig& cfg);

// Exact pairwise error integral, evaluated after the substitution
// w = tan(theta)/2 as (1/2pi) int_{-pi/2}^{pi/2} prod_m
// [cos^2 / (cos^2 + rho_tilde (1 - delta_m^2))]^N dtheta, by adaptive
// Simpson with absolute tolerance 1e-10 and depth cap 40.
double pair_exact(const std::vector<double>& deltas, const ChannelConfig& cfg);

// Worst pair over the constellation (the diversity functions of the SNR).
double chernoff_diversity(const Constellation& c, const ChannelConfig& cfg);
double exact_diversity(const Constellation& c, const ChannelConfig& cfg);

struct CurvePoint {
    double rho_db;
    double rho;
    double value;
};

// Per-point diversity function along an increasing rho grid (dB).
std::vector<CurvePoint> diversity_function_curve(const Constellation& c, int N,
                                                 const std::vector<double>& rho_db_grid,
                                                 bool exact);

// Pair metric helpers shared with the optimizer's reduced-target evaluation.
// A Difference target D stands for Psi_l - Psi_l' (special form, M x M);
// a CrossGram target G stands for Phi_l^* Phi_l'.
double product_from_difference(const CMatrix& d, int M);
double sum_from_difference(const CMatrix& d, int M);
double product_from_cross_gram(const CMatrix& g);
double sum_from_cross_gram(const CMatrix& g);
std::vector<double> deltas_from_difference(const CMatrix& d);
std::vector<double> deltas_from_cross_gram(const CMatrix& g);

} // namespace ustc
