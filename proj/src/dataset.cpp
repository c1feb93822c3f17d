#include "hdc/dataset.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "hdc/rng.hpp"

namespace hdc {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

double parse_field(std::string_view field, const std::string& path, std::size_t line) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        parse_fail(path, line, "non-numeric field '" + std::string(field) + "'");
    if (!std::isfinite(value))
        parse_fail(path, line, "non-finite field '" + std::string(field) + "'");
    return value;
}

// Reads non-empty lines as token rows; tracks physical line numbers for
// error messages.
std::vector<std::vector<std::string>> read_rows(const std::string& path, char delimiter,
                                                bool skip_header,
                                                std::vector<std::size_t>& line_numbers) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    bool header_pending = skip_header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::vector<std::string> row;
        for (std::string_view f : split_fields(line, delimiter)) row.emplace_back(f);
        rows.push_back(std::move(row));
        line_numbers.push_back(lineno);
    }
    return rows;
}

}  // namespace

std::vector<Vec> load_features_csv(const std::string& path, char delimiter, bool skip_header) {
    std::vector<std::size_t> lines;
    const auto rows = read_rows(path, delimiter, skip_header, lines);
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");

    const std::size_t dim = rows.front().size();
    std::vector<Vec> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != dim)
            parse_fail(path, lines[r],
                       "expected " + std::to_string(dim) + " fields, got " +
                           std::to_string(rows[r].size()));
        Vec v(dim);
        for (std::size_t i = 0; i < dim; ++i)
            v[i] = parse_field(rows[r][i], path, lines[r]);
        out.push_back(std::move(v));
    }
    return out;
}

Dataset attach_labels(std::vector<Vec> features, const std::string& labels_path,
                      std::size_t label_column, const std::string& positive_token,
                      char delimiter, bool skip_header) {
    std::vector<std::size_t> lines;
    const auto rows = read_rows(labels_path, delimiter, skip_header, lines);
    if (rows.size() != features.size())
        throw std::runtime_error(labels_path + ": " + std::to_string(rows.size()) +
                                 " label rows for " + std::to_string(features.size()) +
                                 " feature rows");

    Dataset out;
    out.dim = features.empty() ? 0 : features.front().size();
    out.samples.reserve(features.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (label_column >= rows[r].size())
            parse_fail(labels_path, lines[r],
                       "label column " + std::to_string(label_column) + " missing (row has " +
                           std::to_string(rows[r].size()) + " fields)");
        const Label l = rows[r][label_column] == positive_token ? Label::X : Label::Y;
        (l == Label::X ? out.count_x : out.count_y)++;
        out.samples.push_back(LabeledSample{std::move(features[r]), l});
    }
    return out;
}

Dataset make_dataset(std::vector<Vec> x_rows, std::vector<Vec> y_rows) {
    Dataset out;
    out.dim = !x_rows.empty() ? x_rows.front().size()
                              : (!y_rows.empty() ? y_rows.front().size() : 0);
    check_same_dim(x_rows, out.dim, "dataset X rows");
    check_same_dim(y_rows, out.dim, "dataset Y rows");
    out.count_x = x_rows.size();
    out.count_y = y_rows.size();
    out.samples.reserve(x_rows.size() + y_rows.size());
    for (Vec& v : x_rows) out.samples.push_back(LabeledSample{std::move(v), Label::X});
    for (Vec& v : y_rows) out.samples.push_back(LabeledSample{std::move(v), Label::Y});
    return out;
}

Split subsample_split(const Dataset& dataset, const SplitPlan& plan) {
    require(plan.m >= 1 && plan.n >= 1, "split needs m >= 1 and n >= 1");
    std::vector<std::size_t> idx_x, idx_y;
    for (std::size_t i = 0; i < dataset.samples.size(); ++i)
        (dataset.samples[i].label == Label::X ? idx_x : idx_y).push_back(i);

    const auto check_avail = [&](const char* cls, std::size_t have, std::size_t train) {
        if (train > have)
            throw std::invalid_argument(std::string("class ") + cls + " has " +
                                        std::to_string(have) + " samples, need " +
                                        std::to_string(train) + " for training");
        if (plan.test_per_class > have - train)
            throw std::invalid_argument(std::string("class ") + cls + " has " +
                                        std::to_string(have - train) +
                                        " samples left after training, need " +
                                        std::to_string(plan.test_per_class) + " for testing");
    };
    check_avail("X", idx_x.size(), plan.m);
    check_avail("Y", idx_y.size(), plan.n);

    RngStream rng = RngStream::from_seed(plan.seed);
    // Partial Fisher-Yates: only the first (train + test) positions are
    // needed; X is drawn before Y so the stream order is fixed.
    const auto draw = [&](std::vector<std::size_t>& idx, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + rng.next_below(idx.size() - i);
            std::swap(idx[i], idx[j]);
        }
    };
    draw(idx_x, plan.m + plan.test_per_class);
    draw(idx_y, plan.n + plan.test_per_class);

    const auto take = [&](const std::vector<std::size_t>& idx, std::size_t from,
                          std::size_t count) {
        std::vector<Vec> out;
        out.reserve(count);
        for (std::size_t i = from; i < from + count; ++i)
            out.push_back(dataset.samples[idx[i]].features);
        return out;
    };
    Split s;
    s.train_x = take(idx_x, 0, plan.m);
    s.test_x = take(idx_x, plan.m, plan.test_per_class);
    s.train_y = take(idx_y, 0, plan.n);
    s.test_y = take(idx_y, plan.n, plan.test_per_class);
    return s;
}

void write_features_csv(const std::string& path, std::span<const Vec> rows, char delimiter) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (const Vec& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << delimiter;
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace hdc
