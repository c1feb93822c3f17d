#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "hdc/core.hpp"

namespace hdc {

struct LabeledSample {
    Vec features;
    Label label;
};

struct Dataset {
    std::size_t dim = 0;
    std::vector<LabeledSample> samples;
    std::size_t count_x = 0;
    std::size_t count_y = 0;
};

// Random-subsampling train/test protocol: m and n training vectors per
// class, equal-size test sets drawn from the remainder (balanced priors).
struct SplitPlan {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t test_per_class = 0;
    std::uint64_t seed = 0;
};

struct Split {
    std::vector<Vec> train_x, train_y, test_x, test_y;
};

// Delimiter-separated numeric text, one sample per row; dimension inferred
// from the first data row. Ragged rows, non-numeric fields, and NaN/Inf
// tokens are rejected with the offending line number.
std::vector<Vec> load_features_csv(const std::string& path, char delimiter = ',',
                                   bool skip_header = false);

// Pairs each feature row with the label in column `label_column` of the
// labels file (same row order). Rows whose field equals positive_token are
// class X, everything else class Y.
Dataset attach_labels(std::vector<Vec> features, const std::string& labels_path,
                      std::size_t label_column, const std::string& positive_token,
                      char delimiter = ',', bool skip_header = false);

Dataset make_dataset(std::vector<Vec> x_rows, std::vector<Vec> y_rows);

// Uniform without-replacement draw per class via partial Fisher-Yates;
// train and test index sets are disjoint. Pure function of (dataset, plan).
Split subsample_split(const Dataset& dataset, const SplitPlan& plan);

void write_features_csv(const std::string& path, std::span<const Vec> rows,
                        char delimiter = ',');

}  // namespace hdc
