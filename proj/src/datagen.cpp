#include "hdc/datagen.hpp"

#include <cmath>
#include <cstdio>

namespace hdc {

namespace {

const char* mode_name(PatternMode m) {
    switch (m) {
        case PatternMode::Fixed: return "fixed";
        case PatternMode::Random41: return "random_4_1";
        case PatternMode::RandomSharedSupport: return "random_shared_support";
    }
    return "?";
}

const char* z_source_name(ZSource z) {
    switch (z) {
        case ZSource::FromX: return "from_X";
        case ZSource::FromY: return "from_Y";
        case ZSource::RandomEqual: return "random_equal";
    }
    return "?";
}

SignalPattern realize_pattern(const ModelSpec& spec, RngStream& rng) {
    if (spec.pattern_mode == PatternMode::Fixed) return *spec.pattern;

    const std::size_t p = spec.p;
    SignalPattern out;
    out.a.resize(p);
    out.b.resize(p);
    out.i_mask.resize(p);
    out.j_mask.resize(p);
    const bool shared = spec.pattern_mode == PatternMode::RandomSharedSupport;
    for (std::size_t k = 0; k < p; ++k) {
        out.a[k] = rng.next_gaussian();
        out.b[k] = rng.next_gaussian();
        out.i_mask[k] = rng.next_unit() < spec.q ? 1 : 0;
        out.j_mask[k] = shared ? out.i_mask[k] : (rng.next_unit() < spec.q ? 1 : 0);
    }
    return out;
}

Vec class_mean(const SignalPattern& pat, double delta, Label cls) {
    const std::size_t p = pat.a.size();
    Vec mean(p);
    for (std::size_t k = 0; k < p; ++k)
        mean[k] = cls == Label::X ? delta * pat.a[k] * pat.i_mask[k]
                                  : delta * pat.b[k] * pat.j_mask[k];
    return mean;
}

Vec noisy_row(const Vec& mean, const NoiseSpec& noise, RngStream& rng) {
    Vec row = gen_noise_vector(noise, mean.size(), rng);
    for (std::size_t k = 0; k < mean.size(); ++k) row[k] += mean[k];
    return row;
}

}  // namespace

NoiseSpec NoiseSpec::iid() { return NoiseSpec{}; }

NoiseSpec NoiseSpec::moving_average(Vec coeffs) {
    require(!coeffs.empty(), "moving average needs at least one coefficient");
    double ss = 0.0;
    for (double c : coeffs) {
        require(std::isfinite(c), "MA coefficients must be finite");
        ss += c * c;
    }
    require(ss > 0.0, "MA coefficients must not all be zero");
    const double scale = 1.0 / std::sqrt(ss);
    for (double& c : coeffs) c *= scale;
    NoiseSpec out;
    out.kind = NoiseKind::MovingAverage;
    out.ma_coeffs = std::move(coeffs);
    return out;
}

NoiseSpec NoiseSpec::garch(double alpha, double beta) {
    require(std::isfinite(alpha) && std::isfinite(beta), "GARCH parameters must be finite");
    require(alpha >= 0.0 && beta >= 0.0, "GARCH needs alpha >= 0 and beta >= 0");
    require(alpha + beta < 1.0, "GARCH needs alpha + beta < 1 (stationarity)");
    NoiseSpec out;
    out.kind = NoiseKind::Garch;
    out.garch_alpha = alpha;
    out.garch_beta = beta;
    return out;
}

void NoiseSpec::validate() const {
    switch (kind) {
        case NoiseKind::IidGaussian:
            break;
        case NoiseKind::MovingAverage: {
            require(!ma_coeffs.empty(), "moving average needs coefficients");
            double ss = 0.0;
            for (double c : ma_coeffs) ss += c * c;
            require(std::abs(ss - 1.0) <= 1e-9, "MA coefficients must have unit sum of squares");
            break;
        }
        case NoiseKind::Garch:
            require(garch_alpha >= 0.0 && garch_beta >= 0.0 && garch_alpha + garch_beta < 1.0,
                    "invalid GARCH parameters");
            break;
    }
}

std::string NoiseSpec::describe() const {
    switch (kind) {
        case NoiseKind::IidGaussian:
            return "iid";
        case NoiseKind::MovingAverage: {
            std::string s = "ma(";
            for (std::size_t i = 0; i < ma_coeffs.size(); ++i) {
                if (i) s += ',';
                s += format_double(ma_coeffs[i]);
            }
            return s + ")";
        }
        case NoiseKind::Garch:
            return "garch(" + format_double(garch_alpha) + "," + format_double(garch_beta) + ")";
    }
    return "?";
}

double SignalPattern::d_norm_sq() const {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] * i_mask[k] - b[k] * j_mask[k];
        s += d * d;
    }
    return s;
}

void SignalPattern::validate(std::size_t p) const {
    require(a.size() == p && b.size() == p && i_mask.size() == p && j_mask.size() == p,
            "signal pattern vectors must all have length p");
    for (std::size_t k = 0; k < p; ++k) {
        require(std::isfinite(a[k]) && std::isfinite(b[k]), "pattern constants must be finite");
        require(i_mask[k] <= 1 && j_mask[k] <= 1, "indicator entries must be 0 or 1");
    }
}

void ModelSpec::validate() const {
    require(p >= 1, "model needs p >= 1");
    require(m >= 1 && n >= 1, "model needs m >= 1 and n >= 1");
    require(std::isfinite(delta) && delta >= 0.0, "delta must be finite and >= 0");
    require(q > 0.0 && q <= 1.0, "q must lie in (0, 1]");
    noise.validate();
    if (pattern_mode == PatternMode::Fixed) {
        require(pattern.has_value(), "fixed pattern mode needs a pattern");
        pattern->validate(p);
    } else {
        require(!pattern.has_value(), "random pattern modes take no explicit pattern");
    }
}

bool ModelSpec::lr_admissible() const {
    const double top = static_cast<double>((m > n ? m : n) + 1);
    return top * delta * delta < 0.5;
}

std::string ModelSpec::digest() const {
    std::string s = "p=" + std::to_string(p) + ";m=" + std::to_string(m) +
                    ";n=" + std::to_string(n) + ";delta=" + format_double(delta) +
                    ";q=" + format_double(q) + ";mode=" + mode_name(pattern_mode) +
                    ";z=" + z_source_name(z_source) + ";noise=" + noise.describe();
    if (pattern) {
        s += ";pat=";
        for (std::size_t k = 0; k < p; ++k) {
            s += format_double(pattern->a[k]) + "," + format_double(pattern->b[k]) + "," +
                 std::to_string(pattern->i_mask[k]) + "," + std::to_string(pattern->j_mask[k]) +
                 ";";
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(s)));
    return std::string(buf);
}

Vec gen_noise_vector(const NoiseSpec& spec, std::size_t p, RngStream& rng) {
    spec.validate();
    Vec out(p);
    switch (spec.kind) {
        case NoiseKind::IidGaussian:
            for (std::size_t k = 0; k < p; ++k) out[k] = rng.next_gaussian();
            break;
        case NoiseKind::MovingAverage: {
            // Extended driver: components near the end still see a full
            // window, so every marginal has variance exactly 1.
            const std::size_t ell = spec.ma_coeffs.size() - 1;
            Vec driver(p + ell);
            for (double& d : driver) d = rng.next_gaussian();
            for (std::size_t k = 0; k < p; ++k) {
                double s = 0.0;
                for (std::size_t j = 0; j <= ell; ++j) s += spec.ma_coeffs[j] * driver[k + j];
                out[k] = s;
            }
            break;
        }
        case NoiseKind::Garch: {
            const double omega = spec.garch_omega();
            double var = 1.0;  // stationary initialization
            double prev_sq = 0.0;
            for (std::size_t k = 0; k < p; ++k) {
                if (k > 0) var = omega + spec.garch_alpha * prev_sq + spec.garch_beta * var;
                const double eps = std::sqrt(var) * rng.next_gaussian();
                out[k] = eps;
                prev_sq = eps * eps;
            }
            break;
        }
    }
    return out;
}

GeneratedInstance gen_instance(const ModelSpec& spec, RngStream& rng) {
    spec.validate();
    GeneratedInstance out;
    out.realized = realize_pattern(spec, rng);
    out.d_norm_sq = out.realized.d_norm_sq();

    switch (spec.z_source) {
        case ZSource::FromX: out.truth = Label::X; break;
        case ZSource::FromY: out.truth = Label::Y; break;
        case ZSource::RandomEqual: out.truth = rng.next_bool() ? Label::X : Label::Y; break;
    }

    const Vec mean_x = class_mean(out.realized, spec.delta, Label::X);
    const Vec mean_y = class_mean(out.realized, spec.delta, Label::Y);
    out.train_x.reserve(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i)
        out.train_x.push_back(noisy_row(mean_x, spec.noise, rng));
    out.train_y.reserve(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j)
        out.train_y.push_back(noisy_row(mean_y, spec.noise, rng));
    out.z = noisy_row(out.truth == Label::X ? mean_x : mean_y, spec.noise, rng);
    return out;
}

double delta_critical(double c, std::size_t nu, std::size_t p, double q) {
    require(std::isfinite(c) && c > 0.0, "delta_critical needs c > 0");
    require(nu >= 1 && p >= 1, "delta_critical needs nu >= 1 and p >= 1");
    require(q > 0.0 && q <= 1.0, "delta_critical needs q in (0, 1]");
    const double base = static_cast<double>(nu) * static_cast<double>(p) * q * q;
    return c * std::pow(base, -0.25);
}

bool sparsity_floor_ok(double q, std::size_t nu, std::size_t p) {
    require(q > 0.0 && q <= 1.0 && nu >= 1 && p >= 1, "invalid sparsity floor arguments");
    return q >= std::sqrt(static_cast<double>(nu) / static_cast<double>(p));
}

Dataset gen_dataset(const ModelSpec& spec, std::size_t count_x, std::size_t count_y,
                    std::uint64_t seed) {
    spec.validate();
    require(count_x >= 1 && count_y >= 1, "dataset needs at least one row per class");
    RngStream rng = RngStream::from_seed(seed);
    const SignalPattern pat = realize_pattern(spec, rng);
    const Vec mean_x = class_mean(pat, spec.delta, Label::X);
    const Vec mean_y = class_mean(pat, spec.delta, Label::Y);
    std::vector<Vec> xs, ys;
    xs.reserve(count_x);
    ys.reserve(count_y);
    for (std::size_t i = 0; i < count_x; ++i) xs.push_back(noisy_row(mean_x, spec.noise, rng));
    for (std::size_t j = 0; j < count_y; ++j) ys.push_back(noisy_row(mean_y, spec.noise, rng));
    return make_dataset(std::move(xs), std::move(ys));
}

}  // namespace hdc
