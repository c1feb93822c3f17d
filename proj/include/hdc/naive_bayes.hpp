#pragma once

#include <span>

#include "hdc/core.hpp"

namespace hdc {

// Component-independent Gaussian model per class, with a ridge added to
// every variance estimate. Variances are per class and per component
// (unbiased, divisor size-1), not pooled.
struct NaiveBayesModel {
    Vec mean_x, mean_y;
    Vec var_x, var_y;  // ridged variances
    double ridge = 0.0;

    std::size_t dim() const { return mean_x.size(); }
};

NaiveBayesModel naive_bayes_train(std::span<const Vec> train_x,
                                  std::span<const Vec> train_y, double ridge);

// Sum over components of the Gaussian log-density difference (equal
// priors): sum_k [log phi(z_k; mu_Xk, v_Xk) - log phi(z_k; mu_Yk, v_Yk)].
double naive_bayes_stat(const NaiveBayesModel& model, const Vec& z);

Decision naive_bayes_classify(const NaiveBayesModel& model, const Vec& z);

}  // namespace hdc
