#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>

#include "hdc/banded.hpp"
#include "hdc/centroid.hpp"
#include "hdc/core.hpp"
#include "hdc/lr_oracle.hpp"
#include "hdc/naive_bayes.hpp"
#include "hdc/svm.hpp"

namespace hdc {

enum class Rule {
    AlwaysX,     // constant baseline
    Centroid,    // mean-distance statistic
    CentroidSa,  // scale-adjusted centroid
    Nn,          // k-nearest-neighbor on squared distance
    NnSa,        // variance-trace-adjusted NN
    NaiveBayes,  // per-component ridged Gaussian
    Svm,         // linear soft-margin SVM
    Sv,          // banded-covariance quadratic statistic
    Lr,          // exact likelihood-ratio rule (needs model parameters)
};

struct ClassifierSpec {
    Rule rule = Rule::CentroidSa;
    std::size_t nn_k = 1;
    double nb_ridge = 0.1;
    double svm_cost = 1.0;
    std::size_t sv_bandwidth = 1;

    // Plain rule name, e.g. "centroid_sa"; accepted by from_id.
    std::string id() const;
    // Name plus non-structural parameters, e.g. "nn(k=3)"; used in reports.
    std::string describe() const;
    static ClassifierSpec from_id(const std::string& id);
};

// Every implemented rule id, in report order.
std::span<const char* const> all_rule_ids();

// Minimum training points per class for the rule to be applicable.
std::size_t min_class_size(const ClassifierSpec& spec);

// Train-once / classify-many wrapper so the harness can treat every rule
// uniformly. The LR rule is not trained from data beyond the per-component
// sums; it additionally needs the generating parameters.
class TrainedRule {
public:
    TrainedRule(const ClassifierSpec& spec, std::span<const Vec> train_x,
                std::span<const Vec> train_y,
                const std::optional<LrParams>& lr_params = std::nullopt);

    Decision classify(const Vec& z) const;
    const ClassifierSpec& spec() const { return spec_; }

private:
    struct AlwaysXModel {};
    struct NnModel {
        std::vector<Vec> x, y;
        bool adjusted = false;
        std::size_t k = 1;
    };
    struct SvModel {
        BandedMatrix sigma_x, sigma_y;
        Vec mean_x, mean_y;
    };
    struct LrModel {
        LrParams params;
        Vec s, t;  // per-component training sums
    };

    ClassifierSpec spec_;
    std::variant<AlwaysXModel, CentroidModel, NnModel, NaiveBayesModel, LinearSvmModel,
                 SvModel, LrModel>
        model_;
};

}  // namespace hdc
