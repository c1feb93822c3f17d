#include "hdc/naive_bayes.hpp"

#include <cmath>

namespace hdc {

static void class_moments(std::span<const Vec> cls, double ridge, Vec& mean, Vec& var) {
    const std::size_t s = cls.size();
    const std::size_t p = cls[0].size();
    mean.assign(p, 0.0);
    var.assign(p, 0.0);
    for (const auto& v : cls)
        for (std::size_t k = 0; k < p; ++k) mean[k] += v[k];
    for (auto& x : mean) x /= static_cast<double>(s);
    for (const auto& v : cls)
        for (std::size_t k = 0; k < p; ++k) {
            const double d = v[k] - mean[k];
            var[k] += d * d;
        }
    for (auto& x : var) x = x / static_cast<double>(s - 1) + ridge;
}

NaiveBayesModel naive_bayes_train(std::span<const Vec> train_x,
                                  std::span<const Vec> train_y, double ridge) {
    require(train_x.size() >= 2 && train_y.size() >= 2,
            "naive_bayes_train: each class needs >= 2 points");
    require(std::isfinite(ridge) && ridge >= 0.0, "naive_bayes_train: ridge must be finite and >= 0");
    const std::size_t p = train_x[0].size();
    check_same_dim(train_x, p, "naive_bayes_train");
    check_same_dim(train_y, p, "naive_bayes_train");

    NaiveBayesModel model;
    model.ridge = ridge;
    class_moments(train_x, ridge, model.mean_x, model.var_x);
    class_moments(train_y, ridge, model.mean_y, model.var_y);
    return model;
}

double naive_bayes_stat(const NaiveBayesModel& model, const Vec& z) {
    require(z.size() == model.dim(), "naive_bayes_stat: dimension mismatch");
    double stat = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double vx = model.var_x[k];
        const double vy = model.var_y[k];
        if (vx <= 0.0 || vy <= 0.0)
            throw std::runtime_error("naive_bayes_stat: nonpositive variance (degenerate component, ridge 0)");
        const double dx = z[k] - model.mean_x[k];
        const double dy = z[k] - model.mean_y[k];
        // log phi(z; mu_x, vx) - log phi(z; mu_y, vy)
        stat += 0.5 * (std::log(vy / vx) + dy * dy / vy - dx * dx / vx);
    }
    return stat;
}

Decision naive_bayes_classify(const NaiveBayesModel& model, const Vec& z) {
    return decide(naive_bayes_stat(model, z));
}

}  // namespace hdc
