#include "hdc/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hdc {

namespace {

constexpr double kRidgeSteps[] = {0.0, 1e-8, 1e-6, 1e-4, 1e-2};

}  // namespace

BandedMatrix BandedMatrix::from_bands(std::size_t dim, std::size_t bandwidth,
                                      std::vector<Vec> bands) {
    require(dim > 0, "banded matrix needs dim >= 1");
    bandwidth = std::min(bandwidth, dim - 1);
    require(bands.size() == bandwidth + 1, "expected one vector per stored band");
    for (std::size_t d = 0; d <= bandwidth; ++d) {
        require(bands[d].size() == dim - d, "band " + std::to_string(d) + " has wrong length");
        for (double v : bands[d])
            require(std::isfinite(v), "banded matrix entries must be finite");
    }

    BandedMatrix out;
    out.dim_ = dim;
    out.bandwidth_ = bandwidth;
    out.bands_ = std::move(bands);

    double trace = 0.0;
    for (double v : out.bands_[0]) trace += v;
    const double scale = trace / static_cast<double>(dim);

    double worst_pivot = std::numeric_limits<double>::infinity();
    for (double eps : kRidgeSteps) {
        const double ridge = eps * scale;
        double pivot = 0.0;
        if (out.try_factorize(ridge, pivot)) {
            out.ridge_applied_ = ridge;
            return out;
        }
        worst_pivot = std::min(worst_pivot, pivot);
    }
    throw std::invalid_argument(
        "banded matrix is not positive definite even after ridge escalation "
        "(smallest pivot " + std::to_string(worst_pivot) + ")");
}

bool BandedMatrix::try_factorize(double ridge, double& smallest_pivot) {
    const std::size_t p = dim_;
    const std::size_t k = bandwidth_;
    chol_.assign(k + 1, Vec());
    for (std::size_t d = 0; d <= k; ++d) chol_[d].assign(p - d, 0.0);

    smallest_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p; ++j) {
        // L(j,j)^2 = A(j,j) - sum_{t} L(j,t)^2 over in-band t < j.
        double diag = bands_[0][j] + ridge;
        const std::size_t t0 = j > k ? j - k : 0;
        for (std::size_t t = t0; t < j; ++t) {
            const double l = chol_[j - t][t];
            diag -= l * l;
        }
        smallest_pivot = std::min(smallest_pivot, diag);
        if (!(diag > 0.0)) return false;
        const double ljj = std::sqrt(diag);
        chol_[0][j] = ljj;

        const std::size_t imax = std::min(j + k, p - 1);
        for (std::size_t i = j + 1; i <= imax; ++i) {
            double s = bands_[i - j][j];
            const std::size_t s0 = std::max(t0, i > k ? i - k : 0);
            for (std::size_t t = s0; t < j; ++t)
                s -= chol_[i - t][t] * chol_[j - t][t];
            chol_[i - j][j] = s / ljj;
        }
    }
    return true;
}

double BandedMatrix::entry(std::size_t i, std::size_t j) const {
    require(i < dim_ && j < dim_, "banded matrix index out of range");
    const std::size_t lo = std::min(i, j), hi = std::max(i, j);
    const std::size_t d = hi - lo;
    if (d > bandwidth_) return 0.0;
    double v = bands_[d][lo];
    if (d == 0) v += ridge_applied_;
    return v;
}

double BandedMatrix::quad_form(const Vec& v) const {
    require(v.size() == dim_, "quad_form dimension mismatch");
    // Solve L u = v, then v' M^{-1} v = |u|^2.
    Vec u(dim_);
    double out = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double s = v[i];
        const std::size_t t0 = i > bandwidth_ ? i - bandwidth_ : 0;
        for (std::size_t t = t0; t < i; ++t) s -= chol_[i - t][t] * u[t];
        u[i] = s / chol_[0][i];
        out += u[i] * u[i];
    }
    return out;
}

BandedMatrix banded_cov_estimate(std::span<const Vec> sample, std::size_t bandwidth) {
    require(sample.size() >= 2, "covariance needs at least two observations");
    const std::size_t p = sample.front().size();
    check_same_dim(sample, p, "covariance sample");
    require(p > 0, "covariance needs dim >= 1");
    bandwidth = std::min(bandwidth, p - 1);

    Vec mean(p, 0.0);
    for (const Vec& row : sample)
        for (std::size_t i = 0; i < p; ++i) mean[i] += row[i];
    for (double& v : mean) v /= static_cast<double>(sample.size());

    const double denom = static_cast<double>(sample.size() - 1);
    std::vector<Vec> bands(bandwidth + 1);
    for (std::size_t d = 0; d <= bandwidth; ++d) {
        bands[d].assign(p - d, 0.0);
        for (const Vec& row : sample)
            for (std::size_t i = 0; i + d < p; ++i)
                bands[d][i] += (row[i + d] - mean[i + d]) * (row[i] - mean[i]);
        for (double& v : bands[d]) v /= denom;
    }
    return BandedMatrix::from_bands(p, bandwidth, std::move(bands));
}

double sv_stat(const BandedMatrix& sigma_x, const BandedMatrix& sigma_y,
               const Vec& mean_x, const Vec& mean_y, const Vec& z) {
    const std::size_t p = z.size();
    require(sigma_x.dim() == p && sigma_y.dim() == p &&
                mean_x.size() == p && mean_y.size() == p,
            "sv_stat dimension mismatch");
    Vec dx(p), dy(p);
    for (std::size_t i = 0; i < p; ++i) {
        dx[i] = z[i] - mean_x[i];
        dy[i] = z[i] - mean_y[i];
    }
    return sigma_y.quad_form(dy) - sigma_x.quad_form(dx);
}

Decision sv_classify(const BandedMatrix& sigma_x, const BandedMatrix& sigma_y,
                     const Vec& mean_x, const Vec& mean_y, const Vec& z) {
    return decide(sv_stat(sigma_x, sigma_y, mean_x, mean_y, z));
}

}  // namespace hdc
