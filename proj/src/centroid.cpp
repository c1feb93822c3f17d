#include "hdc/centroid.hpp"

#include <cmath>

namespace hdc {

void check_same_dim(std::span<const Vec> sample, std::size_t dim, const char* what) {
    for (const auto& v : sample) {
        if (v.size() != dim)
            throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

double tau_hat_sq(std::span<const Vec> sample) {
    if (sample.size() < 2)
        throw std::invalid_argument("tau_hat_sq: scale not estimable from fewer than 2 vectors");
    const std::size_t s = sample.size();
    const std::size_t p = sample[0].size();
    check_same_dim(sample, p, "tau_hat_sq");

    // Two-pass per component: mean, then centered sum of squares.
    double total = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        double mean = 0.0;
        for (const auto& v : sample) mean += v[k];
        mean /= static_cast<double>(s);
        double ss = 0.0;
        for (const auto& v : sample) {
            const double d = v[k] - mean;
            ss += d * d;
        }
        total += ss / static_cast<double>(s - 1);
    }
    return total;
}

static Vec column_mean(std::span<const Vec> sample) {
    const std::size_t p = sample[0].size();
    Vec mean(p, 0.0);
    for (const auto& v : sample)
        for (std::size_t k = 0; k < p; ++k) mean[k] += v[k];
    for (auto& x : mean) x /= static_cast<double>(sample.size());
    return mean;
}

CentroidModel centroid_train(std::span<const Vec> train_x, std::span<const Vec> train_y) {
    require(!train_x.empty(), "centroid_train: empty X class");
    require(!train_y.empty(), "centroid_train: empty Y class");
    const std::size_t p = train_x[0].size();
    check_same_dim(train_x, p, "centroid_train");
    check_same_dim(train_y, p, "centroid_train");

    CentroidModel model;
    model.m = train_x.size();
    model.n = train_y.size();
    model.mean_x = column_mean(train_x);
    model.mean_y = column_mean(train_y);
    if (model.m >= 2) model.tau_sq_x = tau_hat_sq(train_x);
    if (model.n >= 2) model.tau_sq_y = tau_hat_sq(train_y);
    return model;
}

double CentroidModel::scale_adjustment() const {
    if (!tau_sq_x || !tau_sq_y)
        throw std::invalid_argument("scale adjustment requires min(m,n) >= 2");
    return *tau_sq_x / static_cast<double>(m) - *tau_sq_y / static_cast<double>(n);
}

double t_stat(const CentroidModel& model, const Vec& z) {
    require(z.size() == model.dim(), "t_stat: dimension mismatch");
    return sq_dist(z, model.mean_y) - sq_dist(z, model.mean_x);
}

double t_sa_stat(const CentroidModel& model, const Vec& z) {
    return t_stat(model, z) + model.scale_adjustment();
}

Decision classify_centroid(const CentroidModel& model, const Vec& z, bool adjusted) {
    return decide(adjusted ? t_sa_stat(model, z) : t_stat(model, z));
}

}  // namespace hdc
