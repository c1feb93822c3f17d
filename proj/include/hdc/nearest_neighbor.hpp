#pragma once

#include <span>

#include "hdc/core.hpp"

namespace hdc {

// Nearest-neighbor rule on squared Euclidean distance, with k neighbors
// (the statistic averages the k smallest squared distances per class;
// k = 1 is the plain rule).
//
// Unadjusted statistic:  min_j ||z - Y_j||^2 - min_i ||z - X_i||^2.
// Adjusted statistic subtracts each class's variance-trace estimate from
// its distance, cancelling the class-variance component of the expected
// squared distance:
//   (min_j ||z - Y_j||^2 - tau_y^2) - (min_i ||z - X_i||^2 - tau_x^2).
// The adjusted form needs >= 2 points per class.
double nn_stat(std::span<const Vec> train_x, std::span<const Vec> train_y,
               const Vec& z, bool adjusted, int k = 1);

Decision nn_classify(std::span<const Vec> train_x, std::span<const Vec> train_y,
                     const Vec& z, bool adjusted, int k = 1);

}  // namespace hdc
