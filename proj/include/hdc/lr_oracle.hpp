#pragma once

#include <cstddef>
#include <span>

#include "hdc/core.hpp"

namespace hdc {

// Parameters of the exact likelihood-ratio rule for the random-signal
// model: Gaussian amplitudes, Bernoulli(q) supports, signal strength delta.
struct LrParams {
    std::size_t m = 1;
    std::size_t n = 1;
    double q = 1.0;
    double delta = 0.0;

    void validate() const;
};

// Per-class component sums; the oracle never touches raw samples.
struct SufficientStats {
    Vec s;  // s_k = sum over i of X_ik
    Vec t;  // t_k = sum over j of Y_jk
    Vec z;
};

SufficientStats sufficient_stats(std::span<const Vec> train_x, std::span<const Vec> train_y,
                                 const Vec& z);

// E{exp(c N^2 / 2)} = (1 - c)^(-1/2) for a standard normal N, c < 1.
double gaussian_sq_mgf(double c);

// Log of the two-bracket product that integrates the latent amplitude and
// support out of the per-component likelihood ratio, z grouped with the X
// class. Stable for large exponents (log-sum-exp of the two bracket terms).
double log_psi1(const LrParams& params, double s_k, double t_k, double z_k);

// Same with z grouped with the Y class: the (t_k + z_k, n+1) bracket times
// the (s_k, m) bracket.
double log_psi2(const LrParams& params, double s_k, double t_k, double z_k);

// Sum over components of log_psi1 - log_psi2; positive favors class X.
double log_rho(const LrParams& params, const SufficientStats& stats);

Decision lr_classify(const LrParams& params, const SufficientStats& stats);

// Closed-form mean factors of the per-component bias product, plus the
// resulting log bias for dimension p.
struct LrAnalytics {
    double mu_s = 0.0;
    double mu_t = 0.0;
    double mu_sz = 0.0;
    double mu_tz = 0.0;
};

LrAnalytics mu_terms(const LrParams& params);

// p * log[(1 + q^2 mu_SZ)(1 + q^2 mu_T) / ((1 + q^2 mu_TZ)(1 + q^2 mu_S))];
// approximately m*p*q^2*delta^4 for small delta.
double log_rho_bias(const LrParams& params, std::size_t p);

}  // namespace hdc
