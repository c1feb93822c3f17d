#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace hdc {

// SplitMix64 finalizer (Steele/Lea/Flood; Vigna's public-domain constants).
// Used both as a seed expander and as the mixer for counter-based stream
// derivation.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based sub-seed: mixes the index so that nearby indices give
// unrelated seeds. derive_seed(s, i) != derive_seed(s, j) for i != j
// because the SplitMix64 finalizer is a bijection.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t sm = index;
    return master_seed ^ splitmix64_next(sm);
}

// xoshiro256++ stream seeded via SplitMix64. One stream per Monte Carlo
// replicate; streams for distinct (master_seed, index) pairs are derived by
// mixing the counter through SplitMix64, so replicate r's stream never
// depends on how many workers are running or in what order replicates
// execute.
class RngStream {
public:
    RngStream() { reseed(0); }

    static RngStream from_seed(std::uint64_t seed) {
        RngStream r;
        r.reseed(seed);
        return r;
    }

    // Counter-based derivation: stream(master, index).
    static RngStream derive(std::uint64_t master_seed, std::uint64_t index) {
        return from_seed(derive_seed(master_seed, index));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second value of each pair is
    // cached inside the stream, so consumption stays deterministic per
    // stream.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Unbiased integer in [0, bound) by rejection (Lemire's method).
    std::uint64_t next_below(std::uint64_t bound) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    // UniformRandomBitGenerator interface.
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }
    result_type operator()() { return next_u64(); }

private:
    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
        cached_ = 0.0;
        have_cached_ = false;
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace hdc
