#pragma once

#include <span>

#include "hdc/core.hpp"

namespace hdc {

// Symmetric banded matrix with eager Cholesky factorization. Only the main
// diagonal and `bandwidth` lower diagonals are stored; band d holds entries
// (i+d, i). Factorization applies an escalating diagonal ridge when the
// banded estimate is not positive definite: eps * (trace/dim) for
// eps in {1e-8, 1e-6, 1e-4, 1e-2}, stopping at the first success. The
// applied ridge is recorded; failure past the largest eps throws with the
// smallest pivot seen.
class BandedMatrix {
public:
    static BandedMatrix from_bands(std::size_t dim, std::size_t bandwidth,
                                   std::vector<Vec> bands);

    std::size_t dim() const { return dim_; }
    std::size_t bandwidth() const { return bandwidth_; }
    double ridge_applied() const { return ridge_applied_; }

    // Entry (i, j); zero outside the band.
    double entry(std::size_t i, std::size_t j) const;

    // v' * inverse(this) * v via the banded Cholesky factor: one forward
    // solve and a dot product; the dense inverse is never formed.
    double quad_form(const Vec& v) const;

private:
    BandedMatrix() = default;
    bool try_factorize(double ridge, double& smallest_pivot);

    std::size_t dim_ = 0;
    std::size_t bandwidth_ = 0;
    std::vector<Vec> bands_;         // bands_[d][i] = M(i+d, i)
    std::vector<Vec> chol_;          // same layout, lower Cholesky factor
    double ridge_applied_ = 0.0;
};

// Unbiased sample covariance truncated to |i-j| <= bandwidth.
BandedMatrix banded_cov_estimate(std::span<const Vec> sample, std::size_t bandwidth = 1);

// (z - mean_y)' Sy^{-1} (z - mean_y) - (z - mean_x)' Sx^{-1} (z - mean_x)
double sv_stat(const BandedMatrix& sigma_x, const BandedMatrix& sigma_y,
               const Vec& mean_x, const Vec& mean_y, const Vec& z);

Decision sv_classify(const BandedMatrix& sigma_x, const BandedMatrix& sigma_y,
                     const Vec& mean_x, const Vec& mean_y, const Vec& z);

}  // namespace hdc
