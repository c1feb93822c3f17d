#include "hdc/nearest_neighbor.hpp"

#include <algorithm>

#include "hdc/centroid.hpp"

namespace hdc {

// Mean of the k smallest squared distances from z to the class.
static double k_nearest_sq_dist(std::span<const Vec> cls, const Vec& z, int k) {
    Vec dists;
    dists.reserve(cls.size());
    for (const auto& v : cls) dists.push_back(sq_dist(z, v));
    const auto kth = dists.begin() + k;
    std::nth_element(dists.begin(), kth - 1, dists.end());
    double s = 0.0;
    for (auto it = dists.begin(); it != kth; ++it) s += *it;
    return s / static_cast<double>(k);
}

double nn_stat(std::span<const Vec> train_x, std::span<const Vec> train_y,
               const Vec& z, bool adjusted, int k) {
    require(!train_x.empty(), "nn_stat: empty X class");
    require(!train_y.empty(), "nn_stat: empty Y class");
    require(k >= 1, "nn_stat: k must be >= 1");
    require(static_cast<std::size_t>(k) <= train_x.size() &&
                static_cast<std::size_t>(k) <= train_y.size(),
            "nn_stat: k exceeds a class size");
    const std::size_t p = z.size();
    check_same_dim(train_x, p, "nn_stat");
    check_same_dim(train_y, p, "nn_stat");

    const double dx = k_nearest_sq_dist(train_x, z, k);
    const double dy = k_nearest_sq_dist(train_y, z, k);
    if (!adjusted) return dy - dx;

    if (train_x.size() < 2 || train_y.size() < 2)
        throw std::invalid_argument("nn_stat: scale adjustment requires >= 2 points per class");
    return (dy - tau_hat_sq(train_y)) - (dx - tau_hat_sq(train_x));
}

Decision nn_classify(std::span<const Vec> train_x, std::span<const Vec> train_y,
                     const Vec& z, bool adjusted, int k) {
    return decide(nn_stat(train_x, train_y, z, adjusted, k));
}

}  // namespace hdc
