#include "hdc/classifier.hpp"

#include <array>

#include "hdc/nearest_neighbor.hpp"

namespace hdc {

namespace {

constexpr std::array<const char*, 9> kRuleIds = {
    "always_x", "centroid", "centroid_sa", "nn", "nn_sa", "bayes", "svm", "sv", "lr",
};

constexpr std::array<Rule, 9> kRules = {
    Rule::AlwaysX, Rule::Centroid, Rule::CentroidSa, Rule::Nn, Rule::NnSa,
    Rule::NaiveBayes, Rule::Svm, Rule::Sv, Rule::Lr,
};

}  // namespace

std::string ClassifierSpec::id() const {
    for (std::size_t i = 0; i < kRules.size(); ++i)
        if (kRules[i] == rule) return kRuleIds[i];
    throw std::logic_error("unmapped rule");
}

std::string ClassifierSpec::describe() const {
    switch (rule) {
        case Rule::Nn:
        case Rule::NnSa:
            if (nn_k != 1) return id() + "(k=" + std::to_string(nn_k) + ")";
            return id();
        case Rule::NaiveBayes:
            return id() + "(ridge=" + format_double(nb_ridge) + ")";
        case Rule::Svm:
            return id() + "(cost=" + format_double(svm_cost) + ")";
        case Rule::Sv:
            return id() + "(bw=" + std::to_string(sv_bandwidth) + ")";
        default:
            return id();
    }
}

ClassifierSpec ClassifierSpec::from_id(const std::string& id) {
    for (std::size_t i = 0; i < kRuleIds.size(); ++i)
        if (id == kRuleIds[i]) {
            ClassifierSpec out;
            out.rule = kRules[i];
            return out;
        }
    std::string known;
    for (const char* r : kRuleIds) {
        if (!known.empty()) known += ", ";
        known += r;
    }
    throw std::invalid_argument("unknown classifier '" + id + "' (known: " + known + ")");
}

std::span<const char* const> all_rule_ids() {
    return std::span<const char* const>(kRuleIds.data(), kRuleIds.size());
}

std::size_t min_class_size(const ClassifierSpec& spec) {
    switch (spec.rule) {
        case Rule::AlwaysX: return 0;
        case Rule::Centroid: return 1;
        case Rule::CentroidSa: return 2;
        case Rule::Nn: return spec.nn_k;
        case Rule::NnSa: return spec.nn_k > 2 ? spec.nn_k : 2;
        case Rule::NaiveBayes: return 2;
        case Rule::Svm: return 1;
        case Rule::Sv: return 2;
        case Rule::Lr: return 1;
    }
    return 1;
}

TrainedRule::TrainedRule(const ClassifierSpec& spec, std::span<const Vec> train_x,
                         std::span<const Vec> train_y,
                         const std::optional<LrParams>& lr_params)
    : spec_(spec) {
    switch (spec.rule) {
        case Rule::AlwaysX:
            model_ = AlwaysXModel{};
            break;
        case Rule::Centroid:
        case Rule::CentroidSa:
            model_ = centroid_train(train_x, train_y);
            break;
        case Rule::Nn:
        case Rule::NnSa: {
            NnModel nn;
            nn.x.assign(train_x.begin(), train_x.end());
            nn.y.assign(train_y.begin(), train_y.end());
            nn.adjusted = spec.rule == Rule::NnSa;
            nn.k = spec.nn_k;
            require(!nn.x.empty() && !nn.y.empty(), "NN needs nonempty classes");
            model_ = std::move(nn);
            break;
        }
        case Rule::NaiveBayes:
            model_ = naive_bayes_train(train_x, train_y, spec.nb_ridge);
            break;
        case Rule::Svm:
            model_ = svm_train(train_x, train_y, spec.svm_cost);
            break;
        case Rule::Sv: {
            require(!train_x.empty() && !train_y.empty(), "SV needs nonempty classes");
            const std::size_t p = train_x.front().size();
            Vec mx(p, 0.0), my(p, 0.0);
            for (const Vec& r : train_x)
                for (std::size_t i = 0; i < p; ++i) mx[i] += r[i];
            for (double& v : mx) v /= static_cast<double>(train_x.size());
            for (const Vec& r : train_y)
                for (std::size_t i = 0; i < p; ++i) my[i] += r[i];
            for (double& v : my) v /= static_cast<double>(train_y.size());
            model_ = SvModel{banded_cov_estimate(train_x, spec.sv_bandwidth),
                             banded_cov_estimate(train_y, spec.sv_bandwidth),
                             std::move(mx), std::move(my)};
            break;
        }
        case Rule::Lr: {
            require(lr_params.has_value(), "LR rule needs generating model parameters");
            LrModel lr;
            lr.params = *lr_params;
            require(lr.params.m == train_x.size() && lr.params.n == train_y.size(),
                    "LR parameters disagree with training sizes");
            const std::size_t p = train_x.empty()
                                      ? (train_y.empty() ? 0 : train_y.front().size())
                                      : train_x.front().size();
            check_same_dim(train_x, p, "X training sample");
            check_same_dim(train_y, p, "Y training sample");
            lr.s.assign(p, 0.0);
            lr.t.assign(p, 0.0);
            for (const Vec& r : train_x)
                for (std::size_t k = 0; k < p; ++k) lr.s[k] += r[k];
            for (const Vec& r : train_y)
                for (std::size_t k = 0; k < p; ++k) lr.t[k] += r[k];
            model_ = std::move(lr);
            break;
        }
    }
}

Decision TrainedRule::classify(const Vec& z) const {
    return std::visit(
        [&](const auto& model) -> Decision {
            using M = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<M, AlwaysXModel>) {
                return Decision{Label::X, 1.0};
            } else if constexpr (std::is_same_v<M, CentroidModel>) {
                return classify_centroid(model, z, spec_.rule == Rule::CentroidSa);
            } else if constexpr (std::is_same_v<M, NnModel>) {
                return nn_classify(model.x, model.y, z, model.adjusted,
                                   static_cast<int>(model.k));
            } else if constexpr (std::is_same_v<M, NaiveBayesModel>) {
                return naive_bayes_classify(model, z);
            } else if constexpr (std::is_same_v<M, LinearSvmModel>) {
                return svm_classify(model, z);
            } else if constexpr (std::is_same_v<M, SvModel>) {
                return sv_classify(model.sigma_x, model.sigma_y, model.mean_x, model.mean_y, z);
            } else {
                SufficientStats stats;
                stats.s = model.s;
                stats.t = model.t;
                stats.z = z;
                return lr_classify(model.params, stats);
            }
        },
        model_);
}

}  // namespace hdc
