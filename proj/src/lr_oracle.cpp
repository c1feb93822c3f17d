#include "hdc/lr_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace hdc {

namespace {

// log(1 - q + q * (count*delta^2 + 1)^(-1/2)
//                * exp(delta^2 * u^2 / (2*(count*delta^2 + 1))))
// via log-sum-exp of the two terms; the exponent grows with u^2 and would
// overflow a direct evaluation.
double log_bracket(double q, double count, double delta, double u) {
    if (q == 0.0) return 0.0;
    const double denom = count * delta * delta + 1.0;
    const double log_active =
        std::log(q) - 0.5 * std::log(denom) + 0.5 * delta * delta * u * u / denom;
    if (q == 1.0) return log_active;
    const double log_idle = std::log1p(-q);
    const double hi = log_active > log_idle ? log_active : log_idle;
    const double lo = log_active > log_idle ? log_idle : log_active;
    return hi + std::log1p(std::exp(lo - hi));
}

double inv_sqrt_one_minus(double x) { return 1.0 / std::sqrt(1.0 - x); }

}  // namespace

void LrParams::validate() const {
    require(m >= 1 && n >= 1, "LR params need m >= 1 and n >= 1");
    require(q >= 0.0 && q <= 1.0, "LR params need q in [0, 1]");
    require(std::isfinite(delta) && delta >= 0.0, "LR params need finite delta >= 0");
}

SufficientStats sufficient_stats(std::span<const Vec> train_x, std::span<const Vec> train_y,
                                 const Vec& z) {
    const std::size_t p = z.size();
    check_same_dim(train_x, p, "X training sample");
    check_same_dim(train_y, p, "Y training sample");
    SufficientStats out;
    out.s.assign(p, 0.0);
    out.t.assign(p, 0.0);
    out.z = z;
    for (const Vec& row : train_x)
        for (std::size_t k = 0; k < p; ++k) out.s[k] += row[k];
    for (const Vec& row : train_y)
        for (std::size_t k = 0; k < p; ++k) out.t[k] += row[k];
    return out;
}

double gaussian_sq_mgf(double c) {
    if (!(c < 1.0)) throw std::domain_error("gaussian_sq_mgf needs c < 1");
    return inv_sqrt_one_minus(c);
}

double log_psi1(const LrParams& params, double s_k, double t_k, double z_k) {
    return log_bracket(params.q, static_cast<double>(params.m + 1), params.delta, s_k + z_k) +
           log_bracket(params.q, static_cast<double>(params.n), params.delta, t_k);
}

double log_psi2(const LrParams& params, double s_k, double t_k, double z_k) {
    return log_bracket(params.q, static_cast<double>(params.n + 1), params.delta, t_k + z_k) +
           log_bracket(params.q, static_cast<double>(params.m), params.delta, s_k);
}

double log_rho(const LrParams& params, const SufficientStats& stats) {
    params.validate();
    const std::size_t p = stats.z.size();
    require(stats.s.size() == p && stats.t.size() == p, "sufficient stats dimension mismatch");
    double sum = 0.0;
    for (std::size_t k = 0; k < p; ++k)
        sum += log_psi1(params, stats.s[k], stats.t[k], stats.z[k]) -
               log_psi2(params, stats.s[k], stats.t[k], stats.z[k]);
    return sum;
}

Decision lr_classify(const LrParams& params, const SufficientStats& stats) {
    return decide(log_rho(params, stats));
}

LrAnalytics mu_terms(const LrParams& params) {
    params.validate();
    const double d4 = params.delta * params.delta * params.delta * params.delta;
    const double m = static_cast<double>(params.m);
    const double n = static_cast<double>(params.n);
    if (!((m + 1.0) * (m + 1.0) * d4 < 1.0))
        throw std::domain_error("mu terms need (m+1)^2 delta^4 < 1");
    if (!((n * n + 1.0) * d4 < 1.0))
        throw std::domain_error("mu terms need (n^2+1) delta^4 < 1");

    LrAnalytics out;
    out.mu_s = inv_sqrt_one_minus(m * m * d4) - 1.0;
    out.mu_t = inv_sqrt_one_minus(n * n * d4) - 1.0;
    out.mu_sz = inv_sqrt_one_minus((m + 1.0) * (m + 1.0) * d4) - 1.0;
    out.mu_tz = inv_sqrt_one_minus(d4) + inv_sqrt_one_minus(n * n * d4) - 2.0 +
                params.q * (1.0 + inv_sqrt_one_minus((n * n + 1.0) * d4) -
                            inv_sqrt_one_minus(d4) - inv_sqrt_one_minus(n * n * d4));
    return out;
}

double log_rho_bias(const LrParams& params, std::size_t p) {
    const LrAnalytics mu = mu_terms(params);
    const double q2 = params.q * params.q;
    // log1p keeps the small-delta regime accurate, where every q^2*mu is
    // far below machine-representable relative to 1.
    return static_cast<double>(p) *
           (std::log1p(q2 * mu.mu_sz) + std::log1p(q2 * mu.mu_t) -
            std::log1p(q2 * mu.mu_tz) - std::log1p(q2 * mu.mu_s));
}

}  // namespace hdc
