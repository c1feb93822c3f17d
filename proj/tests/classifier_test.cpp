#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "hdc/classifier.hpp"
#include "hdc/datagen.hpp"
#include "hdc/nearest_neighbor.hpp"
#include "hdc/rng.hpp"

using hdc::ClassifierSpec;
using hdc::Label;
using hdc::Rule;
using hdc::TrainedRule;
using hdc::Vec;

namespace {

hdc::GeneratedInstance fixture_instance() {
    hdc::ModelSpec spec;
    spec.p = 8;
    spec.m = 16;  // enough samples that the banded covariance stays positive definite
    spec.n = 16;
    spec.delta = 0.5;
    spec.q = 0.5;
    spec.z_source = hdc::ZSource::FromX;
    hdc::RngStream rng = hdc::RngStream::from_seed(2718);
    return hdc::gen_instance(spec, rng);
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("rule ids round-trip and enumerate in report order") {
    const std::vector<std::string> expected = {"always_x", "centroid", "centroid_sa",
                                               "nn",       "nn_sa",    "bayes",
                                               "svm",      "sv",       "lr"};
    const auto ids = hdc::all_rule_ids();
    REQUIRE(ids.size() == expected.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        CHECK(ids[i] == expected[i]);
        const ClassifierSpec spec = ClassifierSpec::from_id(expected[i]);
        CHECK(spec.id() == expected[i]);
    }
    CHECK_THROWS_WITH_AS(ClassifierSpec::from_id("zzz"),
                         doctest::Contains("unknown classifier 'zzz' (known: always_x,"),
                         std::invalid_argument);
}

TEST_CASE("descriptions carry the tuning parameters") {
    ClassifierSpec spec = ClassifierSpec::from_id("nn");
    CHECK(spec.describe() == "nn");
    spec.nn_k = 3;
    CHECK(spec.describe() == "nn(k=3)");

    spec = ClassifierSpec::from_id("nn_sa");
    spec.nn_k = 2;
    CHECK(spec.describe() == "nn_sa(k=2)");

    spec = ClassifierSpec::from_id("bayes");
    spec.nb_ridge = 0.25;
    CHECK(spec.describe() == "bayes(ridge=0.25)");

    spec = ClassifierSpec::from_id("svm");
    spec.svm_cost = 2.0;
    CHECK(spec.describe() == "svm(cost=2)");

    spec = ClassifierSpec::from_id("sv");
    spec.sv_bandwidth = 2;
    CHECK(spec.describe() == "sv(bw=2)");

    CHECK(ClassifierSpec::from_id("centroid_sa").describe() == "centroid_sa");
}

TEST_CASE("minimum class sizes per rule") {
    auto min_for = [](const std::string& id, std::size_t k = 1) {
        ClassifierSpec spec = ClassifierSpec::from_id(id);
        spec.nn_k = k;
        return hdc::min_class_size(spec);
    };
    CHECK(min_for("always_x") == 0);
    CHECK(min_for("centroid") == 1);
    CHECK(min_for("centroid_sa") == 2);
    CHECK(min_for("nn") == 1);
    CHECK(min_for("nn", 5) == 5);
    CHECK(min_for("nn_sa") == 2);   // adjustment needs two points even at k=1
    CHECK(min_for("nn_sa", 5) == 5);
    CHECK(min_for("bayes") == 2);
    CHECK(min_for("svm") == 1);
    CHECK(min_for("sv") == 2);
    CHECK(min_for("lr") == 1);
}

TEST_CASE("trained rules reproduce the underlying module statistics exactly") {
    const hdc::GeneratedInstance inst = fixture_instance();
    const auto& x = inst.train_x;
    const auto& y = inst.train_y;
    const Vec& z = inst.z;

    auto check_stat = [&](ClassifierSpec spec, double expect,
                          const std::optional<hdc::LrParams>& lr = std::nullopt) {
        const TrainedRule rule(spec, x, y, lr);
        const hdc::Decision d = rule.classify(z);
        CHECK(d.statistic == expect);  // same code path, bitwise equal
        CHECK(d.label == (expect > 0.0 ? Label::X : Label::Y));
    };

    const hdc::CentroidModel cm = hdc::centroid_train(x, y);
    check_stat(ClassifierSpec::from_id("centroid"), hdc::t_stat(cm, z));
    check_stat(ClassifierSpec::from_id("centroid_sa"), hdc::t_sa_stat(cm, z));

    ClassifierSpec nn = ClassifierSpec::from_id("nn");
    nn.nn_k = 2;
    check_stat(nn, hdc::nn_stat(x, y, z, false, 2));
    ClassifierSpec nn_sa = ClassifierSpec::from_id("nn_sa");
    nn_sa.nn_k = 2;
    check_stat(nn_sa, hdc::nn_stat(x, y, z, true, 2));

    ClassifierSpec bayes = ClassifierSpec::from_id("bayes");
    bayes.nb_ridge = 0.2;
    check_stat(bayes, hdc::naive_bayes_stat(hdc::naive_bayes_train(x, y, 0.2), z));

    ClassifierSpec svm = ClassifierSpec::from_id("svm");
    svm.svm_cost = 1.5;
    check_stat(svm, hdc::svm_stat(hdc::svm_train(x, y, 1.5), z));

    // Class means accumulated the same way the trainer does (sum then divide).
    const std::size_t p = z.size();
    Vec mx(p, 0.0), my(p, 0.0);
    for (const Vec& r : x)
        for (std::size_t i = 0; i < p; ++i) mx[i] += r[i];
    for (double& v : mx) v /= static_cast<double>(x.size());
    for (const Vec& r : y)
        for (std::size_t i = 0; i < p; ++i) my[i] += r[i];
    for (double& v : my) v /= static_cast<double>(y.size());
    check_stat(ClassifierSpec::from_id("sv"),
               hdc::sv_stat(hdc::banded_cov_estimate(x, 1), hdc::banded_cov_estimate(y, 1),
                            mx, my, z));

    hdc::LrParams params;
    params.m = 16;
    params.n = 16;
    params.q = 0.5;
    params.delta = 0.15;  // keeps max(m+1, n+1) * delta^2 under 1/2
    check_stat(ClassifierSpec::from_id("lr"),
               hdc::log_rho(params, hdc::sufficient_stats(x, y, z)), params);
}

TEST_CASE("always_x ignores the input entirely") {
    const hdc::GeneratedInstance inst = fixture_instance();
    const TrainedRule rule(ClassifierSpec::from_id("always_x"), inst.train_x, inst.train_y);
    const hdc::Decision d = rule.classify(inst.z);
    CHECK(d.label == Label::X);
    CHECK(d.statistic == 1.0);
    CHECK(rule.classify(Vec{}).label == Label::X);  // even dimension 0
}

TEST_CASE("lr rule demands matching generating parameters") {
    const hdc::GeneratedInstance inst = fixture_instance();
    CHECK_THROWS_WITH_AS(
        TrainedRule(ClassifierSpec::from_id("lr"), inst.train_x, inst.train_y),
        doctest::Contains("LR rule needs generating model parameters"), std::invalid_argument);

    hdc::LrParams wrong;
    wrong.m = 3;  // instance has 6 X rows
    wrong.n = 6;
    CHECK_THROWS_WITH_AS(
        TrainedRule(ClassifierSpec::from_id("lr"), inst.train_x, inst.train_y, wrong),
        doctest::Contains("LR parameters disagree with training sizes"), std::invalid_argument);
}

TEST_CASE("spec accessor reflects construction") {
    const hdc::GeneratedInstance inst = fixture_instance();
    ClassifierSpec spec = ClassifierSpec::from_id("nn");
    spec.nn_k = 4;
    const TrainedRule rule(spec, inst.train_x, inst.train_y);
    CHECK(rule.spec().rule == Rule::Nn);
    CHECK(rule.spec().nn_k == 4);
}

}  // TEST_SUITE
