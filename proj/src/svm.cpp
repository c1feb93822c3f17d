#include "hdc/svm.hpp"

#include <cmath>
#include <limits>

namespace hdc {

namespace {

struct Problem {
    std::vector<const Vec*> points;
    std::vector<double> y;  // +1 / -1
    std::vector<std::vector<double>> q;  // Q_ij = y_i y_j <x_i, x_j>
    std::size_t size() const { return points.size(); }
};

Problem build_problem(std::span<const Vec> train_x, std::span<const Vec> train_y) {
    Problem pr;
    pr.points.reserve(train_x.size() + train_y.size());
    for (const auto& v : train_x) {
        pr.points.push_back(&v);
        pr.y.push_back(1.0);
    }
    for (const auto& v : train_y) {
        pr.points.push_back(&v);
        pr.y.push_back(-1.0);
    }
    const std::size_t l = pr.size();
    pr.q.assign(l, std::vector<double>(l, 0.0));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i; j < l; ++j) {
            const double v = pr.y[i] * pr.y[j] * dot(*pr.points[i], *pr.points[j]);
            pr.q[i][j] = v;
            pr.q[j][i] = v;
        }
    return pr;
}

}  // namespace

LinearSvmModel svm_train(std::span<const Vec> train_x, std::span<const Vec> train_y,
                         double cost, double kkt_tol, std::size_t max_iter) {
    require(!train_x.empty() && !train_y.empty(), "svm_train: both classes must be nonempty");
    require(cost > 0.0 && std::isfinite(cost), "svm_train: cost must be positive");
    const std::size_t p = train_x[0].size();
    check_same_dim(train_x, p, "svm_train");
    check_same_dim(train_y, p, "svm_train");

    const Problem pr = build_problem(train_x, train_y);
    const std::size_t l = pr.size();
    std::vector<double> alpha(l, 0.0);
    std::vector<double> grad(l, -1.0);  // gradient of 1/2 a'Qa - e'a

    const auto in_up = [&](std::size_t t) {
        return (pr.y[t] > 0 && alpha[t] < cost) || (pr.y[t] < 0 && alpha[t] > 0);
    };
    const auto in_low = [&](std::size_t t) {
        return (pr.y[t] < 0 && alpha[t] < cost) || (pr.y[t] > 0 && alpha[t] > 0);
    };

    double gap = std::numeric_limits<double>::infinity();
    std::size_t iter = 0;
    for (;; ++iter) {
        // Maximal violating pair.
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        std::size_t i = l, j = l;
        for (std::size_t t = 0; t < l; ++t) {
            const double v = -pr.y[t] * grad[t];
            if (in_up(t) && v > g_max) {
                g_max = v;
                i = t;
            }
            if (in_low(t) && v < g_min) {
                g_min = v;
                j = t;
            }
        }
        gap = g_max - g_min;
        if (gap <= kkt_tol) break;
        if (iter >= max_iter)
            throw std::runtime_error("svm_train: no convergence after iteration cap, KKT residual " +
                                     std::to_string(gap));

        const double old_ai = alpha[i], old_aj = alpha[j];
        if (pr.y[i] != pr.y[j]) {
            double quad = pr.q[i][i] + pr.q[j][j] + 2.0 * pr.q[i][j];
            if (quad <= 0.0) quad = 1e-12;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0) {
                if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
            } else {
                if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = -diff; }
            }
            if (diff > 0) {
                if (alpha[i] > cost) { alpha[i] = cost; alpha[j] = cost - diff; }
            } else {
                if (alpha[j] > cost) { alpha[j] = cost; alpha[i] = cost + diff; }
            }
        } else {
            double quad = pr.q[i][i] + pr.q[j][j] - 2.0 * pr.q[i][j];
            if (quad <= 0.0) quad = 1e-12;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > cost) {
                if (alpha[i] > cost) { alpha[i] = cost; alpha[j] = sum - cost; }
            } else {
                if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = sum; }
            }
            if (sum > cost) {
                if (alpha[j] > cost) { alpha[j] = cost; alpha[i] = sum - cost; }
            } else {
                if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = sum; }
            }
        }

        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < l; ++t)
            grad[t] += pr.q[t][i] * dai + pr.q[t][j] * daj;
    }

    LinearSvmModel model;
    model.m = train_x.size();
    model.cost = cost;
    model.kkt_residual = gap;
    model.duals = alpha;
    model.weight.assign(p, 0.0);
    for (std::size_t t = 0; t < l; ++t) {
        const double c = alpha[t] * pr.y[t];
        if (c == 0.0) continue;
        const Vec& x = *pr.points[t];
        for (std::size_t k = 0; k < p; ++k) model.weight[k] += c * x[k];
    }

    // Intercept from free support vectors; midpoint of the KKT bounds when
    // every multiplier sits on a box edge.
    double b_sum = 0.0;
    std::size_t b_count = 0;
    for (std::size_t t = 0; t < l; ++t)
        if (alpha[t] > 0.0 && alpha[t] < cost) {
            b_sum += -pr.y[t] * grad[t];
            ++b_count;
        }
    if (b_count > 0) {
        model.intercept = b_sum / static_cast<double>(b_count);
    } else {
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < l; ++t) {
            const double v = -pr.y[t] * grad[t];
            if (in_up(t)) g_max = std::max(g_max, v);
            if (in_low(t)) g_min = std::min(g_min, v);
        }
        model.intercept = 0.5 * (g_max + g_min);
    }
    return model;
}

double svm_stat(const LinearSvmModel& model, const Vec& z) {
    require(z.size() == model.dim(), "svm_stat: dimension mismatch");
    return dot(model.weight, z) + model.intercept;
}

Decision svm_classify(const LinearSvmModel& model, const Vec& z) {
    return decide(svm_stat(model, z));
}

double svm_dual_objective(const LinearSvmModel& model,
                          std::span<const Vec> train_x, std::span<const Vec> train_y) {
    const Problem pr = build_problem(train_x, train_y);
    const auto& a = model.duals;
    double obj = 0.0;
    for (std::size_t i = 0; i < pr.size(); ++i) {
        obj += a[i];
        for (std::size_t j = 0; j < pr.size(); ++j) obj -= 0.5 * a[i] * a[j] * pr.q[i][j];
    }
    return obj;
}

}  // namespace hdc
