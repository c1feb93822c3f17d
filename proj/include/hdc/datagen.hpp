#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hdc/core.hpp"
#include "hdc/dataset.hpp"
#include "hdc/rng.hpp"

namespace hdc {

enum class NoiseKind { IidGaussian, MovingAverage, Garch };

// All noise kinds are standardized to unit marginal variance so delta alone
// carries signal strength. MA coefficients are rescaled on construction;
// GARCH fixes omega = 1 - alpha - beta and starts at the stationary
// variance.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::IidGaussian;
    Vec ma_coeffs;
    double garch_alpha = 0.0;
    double garch_beta = 0.0;

    static NoiseSpec iid();
    static NoiseSpec moving_average(Vec coeffs);
    static NoiseSpec garch(double alpha, double beta);

    double garch_omega() const { return 1.0 - garch_alpha - garch_beta; }
    void validate() const;
    std::string describe() const;
};

// Deterministic per-component signal: mean of class X is delta*a_k*I_k, of
// class Y is delta*b_k*J_k. Random modes fold the realized draws into a/b.
struct SignalPattern {
    Vec a, b;
    std::vector<std::uint8_t> i_mask, j_mask;  // entries in {0,1}

    double d_norm_sq() const;  // sum over k of (a_k I_k - b_k J_k)^2
    void validate(std::size_t p) const;
};

enum class PatternMode { Fixed, Random41, RandomSharedSupport };
enum class ZSource { FromX, FromY, RandomEqual };

struct ModelSpec {
    std::size_t p = 1;
    std::size_t m = 1;
    std::size_t n = 1;
    double delta = 0.0;
    double q = 1.0;
    PatternMode pattern_mode = PatternMode::RandomSharedSupport;
    std::optional<SignalPattern> pattern;  // Fixed mode only
    NoiseSpec noise = NoiseSpec::iid();
    ZSource z_source = ZSource::RandomEqual;

    void validate() const;
    // Domain of the exact likelihood-ratio rule: max(m+1, n+1) delta^2 < 1/2.
    bool lr_admissible() const;
    std::size_t nu() const { return m < n ? m : n; }
    // Stable hash of every generative parameter; identical specs hash equal.
    std::string digest() const;
};

struct GeneratedInstance {
    std::vector<Vec> train_x, train_y;
    Vec z;
    Label truth = Label::X;
    SignalPattern realized;
    double d_norm_sq = 0.0;
};

// Unit-variance noise vector of length p. Draw order is fixed so the
// degenerate MA (theta = (1)) reproduces the iid stream exactly.
Vec gen_noise_vector(const NoiseSpec& spec, std::size_t p, RngStream& rng);

// One training/test instance. Stream consumption order: pattern draws,
// truth coin, X rows, Y rows, z noise.
GeneratedInstance gen_instance(const ModelSpec& spec, RngStream& rng);

// c * (nu * p * q^2)^(-1/4): the critical signal-strength scaling.
double delta_critical(double c, std::size_t nu, std::size_t p, double q);

// Sparsity floor q >= C*sqrt(nu/p) with C = 1; callers warn when violated.
bool sparsity_floor_ok(double q, std::size_t nu, std::size_t p);

// Fixed-population dataset drawn from one realized pattern: count_x rows of
// class X and count_y of class Y. Feeds the subsampling benchmark.
Dataset gen_dataset(const ModelSpec& spec, std::size_t count_x, std::size_t count_y,
                    std::uint64_t seed);

}  // namespace hdc
