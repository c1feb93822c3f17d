#pragma once

// Independent reference implementations used only by tests: slow, direct
// transcriptions that the production code is checked against.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "hdc/core.hpp"

namespace oracle {

// Triple-sum form of the variance-trace estimator:
// (1 / (2 s (s-1))) * sum_{i1} sum_{i2} sum_k (v_{i1,k} - v_{i2,k})^2.
inline double tau_pairwise(std::span<const hdc::Vec> sample) {
    const std::size_t s = sample.size();
    if (s < 2) throw std::invalid_argument("need two vectors");
    double acc = 0.0;
    for (std::size_t i1 = 0; i1 < s; ++i1)
        for (std::size_t i2 = 0; i2 < s; ++i2)
            for (std::size_t k = 0; k < sample[i1].size(); ++k) {
                const double d = sample[i1][k] - sample[i2][k];
                acc += d * d;
            }
    return acc / (2.0 * static_cast<double>(s) * static_cast<double>(s - 1));
}

// Gauss-Hermite nodes/weights for integrals against e^{-x^2} (physicists'
// convention), by Newton iteration on the normalized recurrence.
inline void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[i - 2];
        double pp = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            double p1 = 0.7511255444649425;  // pi^{-1/4}
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 3e-14) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
}

// E over a standard normal A of exp(delta*A*u - count*delta^2*A^2/2),
// mixed with the Bernoulli(q) idle state; one bracket of the likelihood
// ratio, evaluated by quadrature instead of the closed form.
inline double bracket_quadrature(int nodes, double q, double count, double delta, double u) {
    std::vector<double> x, w;
    gauss_hermite(nodes, x, w);
    double active = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double a = std::numbers::sqrt2 * x[i];
        active += w[i] * std::exp(delta * a * u - 0.5 * count * delta * delta * a * a);
    }
    active /= std::sqrt(std::numbers::pi);
    return 1.0 - q + q * active;
}

// Dense v' A^{-1} v via Gaussian elimination with partial pivoting (no
// Cholesky, deliberately a different algorithm from the production path).
inline double quad_form_dense(std::vector<hdc::Vec> a, const hdc::Vec& v) {
    const std::size_t n = v.size();
    hdc::Vec rhs = v;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0) throw std::runtime_error("singular matrix in oracle");
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    hdc::Vec u(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = rhs[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * u[c];
        u[r] = s / a[r][r];
    }
    // Row swaps on [A | rhs] leave the solution of A u = v unchanged, so
    // u = A^{-1} v and the form is the dot product with the original v.
    double form = 0.0;
    for (std::size_t i = 0; i < n; ++i) form += u[i] * v[i];
    return form;
}

inline double log_normal_pdf(double x, double mean, double var) {
    return -0.5 * std::log(2.0 * std::numbers::pi * var) -
           (x - mean) * (x - mean) / (2.0 * var);
}

}  // namespace oracle
