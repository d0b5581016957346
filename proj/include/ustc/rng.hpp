#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace ustc {

// xoshiro256++ with splitmix64 seeding. Self-contained so that streams are
// bit-reproducible across platforms and standard library versions; Gaussian
// draws use Box-Muller on the raw uniform stream for the same reason.
// Substreams are derived by mixing (seed, a, b), which lets Monte-Carlo
// trials run in any order without changing results.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) { reseed(seed); }

    static RandomStream substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        std::uint64_t x = seed;
        x = splitmix(x ^ (0x9e3779b97f4a7c15ULL + a * 0xbf58476d1ce4e5b9ULL));
        x = splitmix(x ^ (0x94d049bb133111ebULL + b * 0xd6e8feb86659fd93ULL));
        return RandomStream(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(n)) % n;
    }

    // Standard real normal N(0,1).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        do {
            u = next_double();
        } while (u <= 0.0);
        const double v = next_double();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 2.0 * M_PI * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Circular complex normal CN(0,1): E|z|^2 = 1.
    std::complex<double> next_cnormal() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }

private:
    void reseed(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            s = splitmix(x);
        }
        have_spare_ = false;
    }

    static std::uint64_t splitmix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ustc
