#pragma once

#include <span>

#include "hdc/core.hpp"

namespace hdc {

// Soft-margin linear SVM trained on the dual with X points labeled +1 and
// Y points labeled -1.
struct LinearSvmModel {
    Vec weight;
    double intercept = 0.0;
    Vec duals;          // one multiplier per training point, X block first
    std::size_t m = 0;  // size of the X block
    double cost = 0.0;
    double kkt_residual = 0.0;  // final maximal-violating-pair gap

    std::size_t dim() const { return weight.size(); }
};

// Dual coordinate ascent over maximal violating pairs (SMO). Converges to
// kkt_tol on the pair gap; throws after max_iter pair updates, reporting
// the residual reached.
LinearSvmModel svm_train(std::span<const Vec> train_x, std::span<const Vec> train_y,
                         double cost, double kkt_tol = 1e-8,
                         std::size_t max_iter = 1'000'000);

// weight . z + intercept
double svm_stat(const LinearSvmModel& model, const Vec& z);

Decision svm_classify(const LinearSvmModel& model, const Vec& z);

// Value of the dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i
// y_j <x_i, x_j> at the model's multipliers (exposed for diagnostics).
double svm_dual_objective(const LinearSvmModel& model,
                          std::span<const Vec> train_x, std::span<const Vec> train_y);

}  // namespace hdc
