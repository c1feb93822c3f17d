#pragma once

#include <optional>
#include <span>

#include "hdc/core.hpp"

namespace hdc {

// Variance-trace estimate: sum over components of the unbiased
// per-component sample variance. Algebraically identical to the pairwise
// form (1 / (2 s (s-1))) sum_{i1,i2,k} (v_{i1 k} - v_{i2 k})^2.
// Requires at least two vectors ("scale not estimable" otherwise).
double tau_hat_sq(std::span<const Vec> sample);

struct CentroidModel {
    Vec mean_x;
    Vec mean_y;
    // Present only when the corresponding class has >= 2 training points.
    std::optional<double> tau_sq_x;
    std::optional<double> tau_sq_y;
    std::size_t m = 0;  // X training size
    std::size_t n = 0;  // Y training size

    std::size_t dim() const { return mean_x.size(); }

    // m^{-1} tau_x^2 - n^{-1} tau_y^2. Throws when either tau is absent.
    double scale_adjustment() const;
};

CentroidModel centroid_train(std::span<const Vec> train_x, std::span<const Vec> train_y);

// ||z - mean_y||^2 - ||z - mean_x||^2
double t_stat(const CentroidModel& model, const Vec& z);

// t_stat plus the scale adjustment; needs min(m, n) >= 2.
double t_sa_stat(const CentroidModel& model, const Vec& z);

Decision classify_centroid(const CentroidModel& model, const Vec& z, bool adjusted);

}  // namespace hdc
