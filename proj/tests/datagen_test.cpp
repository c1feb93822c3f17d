#include <doctest.h>

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hdc/centroid.hpp"
#include "hdc/datagen.hpp"
#include "hdc/rng.hpp"

using hdc::Label;
using hdc::ModelSpec;
using hdc::NoiseSpec;
using hdc::PatternMode;
using hdc::SignalPattern;
using hdc::Vec;
using hdc::ZSource;

namespace {

SignalPattern flat_pattern(std::size_t p, std::size_t active) {
    SignalPattern pat;
    pat.a.assign(p, 1.0);
    pat.b.assign(p, 0.0);
    pat.i_mask.assign(p, 0);
    pat.j_mask.assign(p, 0);
    for (std::size_t k = 0; k < active; ++k) pat.i_mask[k] = 1;
    return pat;
}

}  // namespace

TEST_SUITE("datagen") {

TEST_CASE("noise descriptions") {
    CHECK(NoiseSpec::iid().describe() == "iid");
    CHECK(NoiseSpec::garch(0.1, 0.85).describe() == "garch(0.1,0.85)");
    const NoiseSpec ma{hdc::NoiseKind::MovingAverage, {0.6, 0.8}, 0.0, 0.0};
    CHECK(ma.describe() == "ma(0.6,0.8)");
}

TEST_CASE("moving-average coefficients are normalized to unit sum of squares") {
    const NoiseSpec ma = NoiseSpec::moving_average({3.0, 4.0});
    REQUIRE(ma.ma_coeffs.size() == 2);
    CHECK(ma.ma_coeffs[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(ma.ma_coeffs[1] == doctest::Approx(0.8).epsilon(1e-15));
    ma.validate();  // unit sum-of-squares holds

    CHECK_THROWS_WITH_AS(NoiseSpec::moving_average({}),
                         doctest::Contains("at least one coefficient"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(NoiseSpec::moving_average({0.0, 0.0}),
                         doctest::Contains("must not all be zero"), std::invalid_argument);
}

TEST_CASE("garch factory validates its parameters") {
    CHECK_THROWS_WITH_AS(NoiseSpec::garch(0.5, 0.5),
                         doctest::Contains("alpha + beta < 1 (stationarity)"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(NoiseSpec::garch(-0.1, 0.2),
                         doctest::Contains("alpha >= 0 and beta >= 0"), std::invalid_argument);
    CHECK(NoiseSpec::garch(0.2, 0.7).garch_omega() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("degenerate moving average reproduces the iid stream exactly") {
    hdc::RngStream a = hdc::RngStream::from_seed(2024);
    hdc::RngStream b = hdc::RngStream::from_seed(2024);
    const Vec iid = hdc::gen_noise_vector(NoiseSpec::iid(), 64, a);
    const Vec ma = hdc::gen_noise_vector(NoiseSpec::moving_average({1.0}), 64, b);
    CHECK(iid == ma);
}

TEST_CASE("moving-average noise has unit variance and the designed lag-1 correlation") {
    const NoiseSpec ma = NoiseSpec::moving_average({1.0, 1.0});
    hdc::RngStream rng = hdc::RngStream::from_seed(77);
    const std::size_t p = 40000;
    const Vec v = hdc::gen_noise_vector(ma, p, rng);

    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(p);
    double var = 0.0, lag1 = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        var += (v[k] - mean) * (v[k] - mean);
        if (k + 1 < p) lag1 += (v[k] - mean) * (v[k + 1] - mean);
    }
    var /= static_cast<double>(p - 1);
    lag1 /= static_cast<double>(p - 1);

    CHECK(std::abs(mean) < 0.03);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
    CHECK(lag1 / var == doctest::Approx(0.5).epsilon(0.12));
}

TEST_CASE("garch noise keeps unit variance but clusters volatility") {
    const NoiseSpec garch = NoiseSpec::garch(0.25, 0.55);
    hdc::RngStream rng = hdc::RngStream::from_seed(909);
    const std::size_t p = 200000;
    const Vec v = hdc::gen_noise_vector(garch, p, rng);

    double var = 0.0, fourth = 0.0;
    for (double x : v) {
        var += x * x;
        fourth += x * x * x * x;
    }
    var /= static_cast<double>(p);
    fourth /= static_cast<double>(p);
    const double kurtosis = fourth / (var * var);

    double sq_lag1 = 0.0, sq_mean = var;
    for (std::size_t k = 0; k + 1 < p; ++k)
        sq_lag1 += (v[k] * v[k] - sq_mean) * (v[k + 1] * v[k + 1] - sq_mean);
    sq_lag1 /= static_cast<double>(p - 1);
    const double sq_var = fourth - var * var;

    CHECK(var == doctest::Approx(1.0).epsilon(0.06));
    CHECK(kurtosis > 3.2);                 // heavier tails than gaussian
    CHECK(sq_lag1 / sq_var > 0.1);         // squared values are autocorrelated
}

TEST_CASE("signal pattern norm and validation") {
    SignalPattern pat;
    pat.a = {1.0, 2.0};
    pat.b = {2.0, 1.0};
    pat.i_mask = {1, 1};
    pat.j_mask = {0, 1};
    CHECK(pat.d_norm_sq() == doctest::Approx(2.0).epsilon(1e-15));
    pat.validate(2);

    CHECK_THROWS_WITH_AS(pat.validate(3),
                         doctest::Contains("must all have length p"), std::invalid_argument);
    pat.i_mask[0] = 2;
    CHECK_THROWS_WITH_AS(pat.validate(2),
                         doctest::Contains("indicator entries must be 0 or 1"),
                         std::invalid_argument);
}

TEST_CASE("model spec validation") {
    ModelSpec spec;
    spec.p = 4;
    spec.validate();

    ModelSpec bad = spec;
    bad.q = 0.0;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("q must lie in (0, 1]"),
                         std::invalid_argument);
    bad = spec;
    bad.delta = -0.1;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("delta must be finite and >= 0"),
                         std::invalid_argument);
    bad = spec;
    bad.pattern = flat_pattern(4, 2);
    CHECK_THROWS_WITH_AS(bad.validate(),
                         doctest::Contains("random pattern modes take no explicit pattern"),
                         std::invalid_argument);
    bad = spec;
    bad.pattern_mode = PatternMode::Fixed;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("fixed pattern mode needs a pattern"),
                         std::invalid_argument);
}

TEST_CASE("likelihood-ratio admissibility boundary") {
    ModelSpec spec;
    spec.m = spec.n = 1;
    spec.delta = 0.49;
    CHECK(spec.lr_admissible());  // 2 * 0.2401 < 0.5
    spec.delta = 0.5;
    CHECK_FALSE(spec.lr_admissible());  // 2 * 0.25 == 0.5 exactly
    spec.m = 4;
    spec.delta = 0.3;
    CHECK(spec.lr_admissible());  // 5 * 0.09 = 0.45
    spec.delta = 0.32;
    CHECK_FALSE(spec.lr_admissible());  // 5 * 0.1024 > 0.5
}

TEST_CASE("digest is stable, hex, and sensitive to every knob") {
    ModelSpec spec;
    spec.p = 8;
    spec.m = 3;
    spec.n = 2;
    spec.delta = 0.25;
    spec.q = 0.5;

    const std::string d = spec.digest();
    CHECK(d.size() == 16);
    for (char c : d) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
    CHECK(spec.digest() == d);

    auto differs = [&](ModelSpec other) { return other.digest() != d; };
    ModelSpec v = spec;
    v.delta = 0.26;
    CHECK(differs(v));
    v = spec;
    v.q = 0.51;
    CHECK(differs(v));
    v = spec;
    v.z_source = ZSource::FromX;
    CHECK(differs(v));
    v = spec;
    v.pattern_mode = PatternMode::Random41;
    CHECK(differs(v));
    v = spec;
    v.noise = NoiseSpec::garch(0.1, 0.8);
    CHECK(differs(v));
    v = spec;
    v.p = 9;
    CHECK(differs(v));

    ModelSpec fixed = spec;
    fixed.pattern_mode = PatternMode::Fixed;
    fixed.pattern = flat_pattern(8, 3);
    const std::string df = fixed.digest();
    fixed.pattern->a[7] = 2.0;
    CHECK(fixed.digest() != df);
}

TEST_CASE("instance generation is deterministic and honors the z source") {
    ModelSpec spec;
    spec.p = 6;
    spec.m = 3;
    spec.n = 2;
    spec.delta = 0.4;
    spec.q = 0.5;
    spec.z_source = ZSource::FromX;

    hdc::RngStream r1 = hdc::RngStream::from_seed(5);
    hdc::RngStream r2 = hdc::RngStream::from_seed(5);
    const hdc::GeneratedInstance a = hdc::gen_instance(spec, r1);
    const hdc::GeneratedInstance b = hdc::gen_instance(spec, r2);
    CHECK(a.truth == Label::X);
    CHECK(a.train_x == b.train_x);
    CHECK(a.train_y == b.train_y);
    CHECK(a.z == b.z);
    CHECK(a.realized.a == b.realized.a);
    CHECK(a.d_norm_sq == b.d_norm_sq);
    CHECK(a.train_x.size() == 3);
    CHECK(a.train_y.size() == 2);
    CHECK(a.z.size() == 6);

    spec.z_source = ZSource::FromY;
    hdc::RngStream r3 = hdc::RngStream::from_seed(5);
    CHECK(hdc::gen_instance(spec, r3).truth == Label::Y);
}

TEST_CASE("fixed patterns consume no generator draws") {
    ModelSpec spec;
    spec.p = 10;
    spec.m = 1;
    spec.n = 1;
    spec.delta = 0.0;
    spec.pattern_mode = PatternMode::Fixed;
    spec.pattern = flat_pattern(10, 4);
    spec.z_source = ZSource::FromX;

    hdc::RngStream gen = hdc::RngStream::from_seed(333);
    const hdc::GeneratedInstance inst = hdc::gen_instance(spec, gen);
    hdc::RngStream raw = hdc::RngStream::from_seed(333);
    const Vec expect = hdc::gen_noise_vector(NoiseSpec::iid(), 10, raw);
    CHECK(inst.train_x.front() == expect);  // bitwise: no pattern or coin draws
}

TEST_CASE("random pattern modes differ in mask coupling") {
    ModelSpec spec;
    spec.p = 2000;
    spec.m = 1;
    spec.n = 1;
    spec.q = 0.5;
    spec.z_source = ZSource::FromX;

    spec.pattern_mode = PatternMode::RandomSharedSupport;
    hdc::RngStream r1 = hdc::RngStream::from_seed(17);
    const auto shared = hdc::gen_instance(spec, r1).realized;
    CHECK(shared.i_mask == shared.j_mask);

    spec.pattern_mode = PatternMode::Random41;
    hdc::RngStream r2 = hdc::RngStream::from_seed(17);
    const auto indep = hdc::gen_instance(spec, r2).realized;
    std::size_t ones = 0, mismatches = 0;
    for (std::size_t k = 0; k < spec.p; ++k) {
        ones += indep.i_mask[k];
        mismatches += indep.i_mask[k] != indep.j_mask[k];
    }
    CHECK(ones > 900);
    CHECK(ones < 1100);
    CHECK(mismatches > 0);
}

TEST_CASE("random_equal draws the truth label as a fair coin") {
    ModelSpec spec;
    spec.p = 2;
    spec.m = 1;
    spec.n = 1;
    std::size_t xs = 0;
    for (std::uint64_t s = 0; s < 400; ++s) {
        hdc::RngStream rng = hdc::RngStream::from_seed(hdc::derive_seed(1234, s));
        if (hdc::gen_instance(spec, rng).truth == Label::X) ++xs;
    }
    CHECK(xs > 140);
    CHECK(xs < 260);
}

TEST_CASE("z is drawn around the mean of the true class") {
    ModelSpec spec;
    spec.p = 1;
    spec.m = 1;
    spec.n = 1;
    spec.delta = 50.0;
    spec.pattern_mode = PatternMode::Fixed;
    SignalPattern pat;
    pat.a = {0.0};
    pat.b = {1.0};
    pat.i_mask = {0};
    pat.j_mask = {1};
    spec.pattern = pat;
    spec.z_source = ZSource::FromY;

    hdc::RngStream rng = hdc::RngStream::from_seed(8);
    const auto inst = hdc::gen_instance(spec, rng);
    CHECK(inst.z.front() > 25.0);
    CHECK(inst.train_y.front().front() > 25.0);
    CHECK(inst.train_x.front().front() < 25.0);
}

TEST_CASE("critical delta scaling") {
    CHECK(hdc::delta_critical(2.0, 16, 1, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hdc::delta_critical(1.0, 1, 1, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    const double base = hdc::delta_critical(1.3, 8, 100, 0.3);
    CHECK(hdc::delta_critical(1.3, 8, 1600, 0.3) == doctest::Approx(base / 2.0).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(hdc::delta_critical(0.0, 1, 1, 1.0),
                         doctest::Contains("delta_critical needs c > 0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(hdc::delta_critical(1.0, 1, 1, 1.5),
                         doctest::Contains("q in (0, 1]"), std::invalid_argument);
}

TEST_CASE("sparsity floor") {
    CHECK(hdc::sparsity_floor_ok(0.5, 1, 4));    // exactly at the floor
    CHECK_FALSE(hdc::sparsity_floor_ok(0.49, 1, 4));
    CHECK(hdc::sparsity_floor_ok(1.0, 50, 50));
    CHECK_FALSE(hdc::sparsity_floor_ok(0.01, 8, 2000));  // sqrt(8/2000) ~ 0.063
    CHECK_THROWS_WITH_AS(hdc::sparsity_floor_ok(0.0, 1, 1),
                         doctest::Contains("invalid sparsity floor"), std::invalid_argument);
}

TEST_CASE("population datasets lay out X rows first and are reproducible") {
    ModelSpec spec;
    spec.p = 2;
    spec.m = 1;
    spec.n = 1;
    spec.delta = 10.0;
    spec.pattern_mode = PatternMode::Fixed;
    SignalPattern pat;
    pat.a = {1.0, 0.0};
    pat.b = {0.0, 1.0};
    pat.i_mask = {1, 0};
    pat.j_mask = {0, 1};
    spec.pattern = pat;

    const hdc::Dataset d1 = hdc::gen_dataset(spec, 3, 2, 99);
    const hdc::Dataset d2 = hdc::gen_dataset(spec, 3, 2, 99);
    CHECK(d1.count_x == 3);
    CHECK(d1.count_y == 2);
    CHECK(d1.dim == 2);
    REQUIRE(d1.samples.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(d1.samples[i].label == (i < 3 ? Label::X : Label::Y));
        CHECK(d1.samples[i].features == d2.samples[i].features);
    }
    CHECK(d1.samples[0].features[0] > 5.0);   // X mean is (10, 0)
    CHECK(d1.samples[0].features[1] < 5.0);
    CHECK(d1.samples[4].features[1] > 5.0);   // Y mean is (0, 10)

    CHECK_THROWS_WITH_AS(hdc::gen_dataset(spec, 0, 2, 1),
                         doctest::Contains("at least one row per class"), std::invalid_argument);
}

TEST_CASE("scale-adjusted statistic is centered at delta^2 * |d|^2") {
    // Monte Carlo check of the design identity E[s(Z) T_sa] = delta^2 |d|^2.
    ModelSpec spec;
    spec.p = 50;
    spec.m = 4;
    spec.n = 4;
    spec.delta = 0.4;
    spec.pattern_mode = PatternMode::Fixed;
    spec.pattern = flat_pattern(50, 10);
    spec.z_source = ZSource::RandomEqual;

    const double target = spec.delta * spec.delta * spec.pattern->d_norm_sq();
    CHECK(target == doctest::Approx(1.6).epsilon(1e-12));

    const std::size_t reps = 4000;
    double acc = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        hdc::RngStream rng = hdc::RngStream::from_seed(hdc::derive_seed(777, r));
        const auto inst = hdc::gen_instance(spec, rng);
        const hdc::CentroidModel model = hdc::centroid_train(inst.train_x, inst.train_y);
        const double sign = inst.truth == Label::X ? 1.0 : -1.0;
        acc += sign * hdc::t_sa_stat(model, inst.z);
    }
    acc /= static_cast<double>(reps);
    CHECK(acc == doctest::Approx(target).epsilon(0.5));  // ~4 standard errors wide
}

}  // TEST_SUITE
