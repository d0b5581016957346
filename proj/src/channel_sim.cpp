#include "ustc/channel_sim.hpp"

#include <cmath>
#include <tuple>

namespace ustc {

std::pair<double, double> wilson_interval(long errors, long trials) {
    if (trials <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

double decode_metric(const CMatrix& phi, const CMatrix& r) {
    // ||R^* Phi||_F == ||Phi^* R||_F; accumulate without forming the product.
    const int T = phi.rows();
    const int M = phi.cols();
    const int N = r.cols();
    double acc = 0.0;
    for (int j = 0; j < M; ++j) {
        for (int n = 0; n < N; ++n) {
            cplx s = 0.0;
            for (int t = 0; t < T; ++t) s += std::conj(phi.at(t, j)) * r.at(t, n);
            acc += std::norm(s);
        }
    }
    return acc;
}

CMatrix random_cnormal_matrix(int rows, int cols, RandomStream& rng) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = rng.next_cnormal();
    return m;
}

std::pair<int, int> run_trial(const Constellation& general, const ChannelConfig& cfg,
                              RandomStream& rng) {
    const int L = general.size();
    const int sent = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(L)));
    const CMatrix h = random_cnormal_matrix(cfg.M, cfg.N, rng);
    const CMatrix w = random_cnormal_matrix(cfg.T, cfg.N, rng);
    const double scale = std::sqrt(cfg.rho * cfg.T / cfg.M);
    CMatrix r = general.elements[static_cast<std::size_t>(sent)] * h;
    for (std::size_t i = 0; i < r.entries().size(); ++i)
        r.entries()[i] = scale * r.entries()[i] + w.entries()[i];
    return {sent, ml_decode(general, r)};
}

} // namespace

int ml_decode(const Constellation& general, const CMatrix& r) {
    if (general.form != Form::General)
        throw ValidationError("ml_decode: constellation must be in general form");
    int best = 0;
    double best_metric = -1.0;
    for (int l = 0; l < general.size(); ++l) {
        const double m = decode_metric(general.elements[static_cast<std::size_t>(l)], r);
        if (m > best_metric) {
            best_metric = m;
            best = l;
        }
    }
    return best;
}

std::pair<int, int> transmit_decode_trial(const Constellation& c, const ChannelConfig& cfg,
                                          RandomStream& rng) {
    const Constellation general = c.to_general();
    if (cfg.T != general.T || cfg.M != general.M)
        throw ValidationError("transmit_decode_trial: ChannelConfig does not match");
    return run_trial(general, cfg, rng);
}

SimulationResult simulate_bler(const Constellation& c, const SimConfig& sim) {
    if (sim.rho_db_grid.empty())
        throw ValidationError("simulate_bler: empty SNR grid");
    if (sim.trials_per_point < 1)
        throw ValidationError("simulate_bler: trials_per_point must be >= 1");
    const Constellation general = c.to_general();
    SimulationResult out;
    out.points.reserve(sim.rho_db_grid.size());
    for (std::size_t pi = 0; pi < sim.rho_db_grid.size(); ++pi) {
        const ChannelConfig cfg(general.T, general.M, sim.N, db_to_linear(sim.rho_db_grid[pi]));
        SimPoint pt;
        pt.rho_db = sim.rho_db_grid[pi];
        for (long t = 0; t < sim.trials_per_point; ++t) {
            RandomStream rng = RandomStream::substream(sim.seed, pi, static_cast<std::uint64_t>(t));
            const auto [sent, decoded] = run_trial(general, cfg, rng);
            ++pt.trials;
            if (decoded != sent) ++pt.errors;
            if (sim.max_errors > 0 && pt.errors >= sim.max_errors) break;
        }
        pt.bler = static_cast<double>(pt.errors) / pt.trials;
        std::tie(pt.wilson_lo, pt.wilson_hi) = wilson_interval(pt.errors, pt.trials);
        out.points.push_back(pt);
    }
    return out;
}

double pairwise_error_estimate(const CMatrix& phi_a, const CMatrix& phi_b,
                               const ChannelConfig& cfg, long trials, std::uint64_t seed) {
    if (phi_a.rows() != cfg.T || phi_a.cols() != cfg.M || phi_b.rows() != cfg.T ||
        phi_b.cols() != cfg.M)
        throw ValidationError("pairwise_error_estimate: frame shape does not match the config");
    if (trials < 1)
        throw ValidationError("pairwise_error_estimate: trials must be >= 1");
    const double scale = std::sqrt(cfg.rho * cfg.T / cfg.M);
    long errors = 0;
    for (long t = 0; t < trials; ++t) {
        RandomStream rng = RandomStream::substream(seed, 0, static_cast<std::uint64_t>(t));
        const CMatrix h = random_cnormal_matrix(cfg.M, cfg.N, rng);
        const CMatrix w = random_cnormal_matrix(cfg.T, cfg.N, rng);
        CMatrix r = phi_a * h;
        for (std::size_t i = 0; i < r.entries().size(); ++i)
            r.entries()[i] = scale * r.entries()[i] + w.entries()[i];
        const double ma = decode_metric(phi_a, r);
        const double mb = decode_metric(phi_b, r);
        if (mb > ma) ++errors;
        else if (mb == ma && rng.next_double() < 0.5) ++errors;
    }
    return static_cast<double>(errors) / trials;
}

} // namespace ustc
