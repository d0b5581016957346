#pragma once

#include <cstdint>
#include <vector>

#include "ustc/constellation.hpp"

namespace ustc {

// sum over permutations sigma of prod_i |u_{i sigma(i)}| (the permanent of
// the entrywise absolute value). Enumeration limited to n <= 8.
double permanent_abs_sum(const UnitaryMatrix& u);

struct BoundReport {
    int n = 0;
    double F_estimate = 1.0;
    double product_bound = 0.0; // F^{1/n} * sqrt(3)/2
    CMatrix witness;            // unitary achieving the estimate
};

// Multi-start annealing estimate of F(n) = sup over U(n) of the permutation
// sum, 32 restarts in Cayley coordinates. 2 <= n <= 5.
BoundReport estimate_F(int n, long budget_iterations, std::uint64_t seed);

// The four optimal-triple families of the three-element analysis. D/E carry
// the conjugate cube-root pair, F/G the swapped pair (numerically the same
// diagonals). The printed families leave the two conjugators unconstrained,
// which admits degenerate triples (conjugating E onto D collapses two
// elements), so the construction uses the single combined conjugator W = A*B;
// every output then reaches product = sum = sqrt(3)/2 exactly.
enum class ThreeElementVariant { LeftDE, LeftFG, RightDE, RightFG };

Constellation optimal_three_element(ThreeElementVariant variant, const UnitaryMatrix& a,
                                    const UnitaryMatrix& b, const UnitaryMatrix& c);

struct ThreeElementBoundsReport {
    long samples = 0;
    double max_product_sampled = 0.0;
    double max_sum_sampled = 0.0;
    double max_product_refined = 0.0;  // after local hill-climb from the best sample
    double max_sum_refined = 0.0;
    double max_sum_diagonal = 0.0;     // 4-angle grid over diagonal triples
    double constructed_product = 0.0;  // optimal_three_element value
    double constructed_sum = 0.0;
};

// Random triples in U(2) plus local refinement plus the diagonal grid; used
// to confirm the sqrt(3)/2 optimum is never exceeded and is attained.
ThreeElementBoundsReport verify_three_element_bounds(long samples, int diagonal_grid,
                                                     std::uint64_t seed);

struct SineProductReport {
    int m = 0;
    int n = 0;
    double maximum = 0.0;            // maximized min_i prod_j sin(phi_ij)
    double analytic = 0.0;           // (sin pi/n)^m
    double max_angle_deviation = 0.0; // max |phi_ij - pi/n| at the maximizer
    std::vector<double> maximizer;   // row-major n x m angles
};

// Maximizes min_i prod_j sin(phi_ij) over n x m angle matrices with columns
// summing to pi, by projected gradient ascent on a softmin relaxation from
// 64 random starts.
SineProductReport sine_product_check(int m, int n, std::uint64_t seed);

} // namespace ustc
