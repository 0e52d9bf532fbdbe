#ifndef PQC_RNG_HPP
#define PQC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string>

namespace pqc {

// Seedable, portable pseudo-random generator: xoshiro256** with splitmix64
// state expansion. All output is a pure function of (seed, stream), so
// independent streams can be handed to parallel workers and the combined
// results do not depend on scheduling. The algorithm name is recorded in
// every report that consumed random numbers.
class Rng {
  public:
    static constexpr const char* algorithm = "xoshiro256**";

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        // splitmix64 over (seed, stream) fills the four state words
        std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        for (auto& w : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached spare, keeps streams simple).
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

    /// Poisson sample by summing exponential inter-arrival times in log
    /// space. O(mean) draws per sample, fine for the count rates handled
    /// here (up to a few thousand).
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0)
            return 0;
        std::uint64_t k = 0;
        double t = 0.0;
        while (true) {
            double u = uniform();
            while (u <= 0.0)
                u = uniform();
            t += -std::log(u);
            if (t >= mean)
                return k;
            ++k;
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

} // namespace pqc

#endif
