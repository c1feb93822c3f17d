#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hdc {

using Vec = std::vector<double>;

// The two populations. X plays the role of the "positive" class
// (malignant analogue in labeled data).
enum class Label { X, Y };

inline const char* label_name(Label l) { return l == Label::X ? "X" : "Y"; }

// Signed decision value plus the label it implies. Every rule in this
// project uses the same convention: label X iff statistic > 0, ties to Y.
struct Decision {
    Label label;
    double statistic;
};

inline Decision decide(double statistic) {
    return Decision{statistic > 0.0 ? Label::X : Label::Y, statistic};
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double sq_norm(std::span<const double> a) { return dot(a, a); }

// ||a - b||^2
inline double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Filesystem-level failure (open/write/rename), as opposed to content
// errors; the CLI maps these to a distinct exit code.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Shortest decimal text that re-parses to exactly the same double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void check_same_dim(std::span<const Vec> sample, std::size_t dim, const char* what);

}  // namespace hdc
