#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ustc/constellation.hpp"
#include "ustc/diversity.hpp"
#include "ustc/rng.hpp"

namespace ustc {

struct SimConfig {
    std::vector<double> rho_db_grid;
    long trials_per_point = 1;
    std::uint64_t seed = 1;
    long max_errors = 0; // early stop once this many block errors, 0 = off
    int N = 2;           // receive antennas
};

struct SimPoint {
    double rho_db = 0.0;
    long trials = 0;
    long errors = 0;
    double bler = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
};

struct SimulationResult {
    std::vector<SimPoint> points;
};

// 95% Wilson score interval for e successes in n trials.
std::pair<double, double> wilson_interval(long errors, long trials);

// ML codeword index for a received block: argmax_l ||R^* Phi_l||_F, ties to
// the lowest index. The constellation must be in general form.
int ml_decode(const Constellation& general, const CMatrix& r);

// One fading trial: uniform codeword, R = sqrt(rho T / M) Phi H + W with
// CN(0,1) entries, returns (sent, decoded). Special-form inputs are embedded
// first.
std::pair<int, int> transmit_decode_trial(const Constellation& c, const ChannelConfig& cfg,
                                          RandomStream& rng);

// Block-error-rate sweep. Trial t of grid point i draws its own substream
// from (seed, i, t), so results do not depend on evaluation order.
SimulationResult simulate_bler(const Constellation& c, const SimConfig& sim);

// Monte-Carlo estimate of Prob(choose phi_b | phi_a sent) for a two-codeword
// system. Ties (identical codewords) split evenly.
double pairwise_error_estimate(const CMatrix& phi_a, const CMatrix& phi_b,
                               const ChannelConfig& cfg, long trials, std::uint64_t seed);

} // namespace ustc
