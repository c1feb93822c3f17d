#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hdc/classifier.hpp"
#include "hdc/datagen.hpp"
#include "hdc/dataset.hpp"

namespace hdc {

struct ErrorReport {
    double err_x = 0.0;  // P(assigned Y | truth X) estimate
    double err_y = 0.0;  // P(assigned X | truth Y) estimate
    double se_x = 0.0;
    double se_y = 0.0;
    std::size_t reps = 0;  // total replicates across both classes
    std::uint64_t seed = 0;
    std::string classifier_id;
    std::string spec_digest;

    double total() const { return err_x + err_y; }
    // Class-balanced accuracy: 1 - (err_x + err_y)/2.
    double accuracy() const { return 1.0 - 0.5 * total(); }
};

struct SweepBase {
    std::size_t p = 0;
    std::size_t nu = 0;  // common training size m = n
    double q = 0.0;
};

struct SweepCell {
    double c = 0.0;
    std::size_t p = 0;
    std::size_t nu = 0;
    double q = 0.0;
    double delta = 0.0;
    ErrorReport report;
};
using SweepTable = std::vector<SweepCell>;

struct CalibrationResult {
    double target_accuracy = 0.0;
    double delta_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::size_t reps_per_probe = 0;
    double achieved_accuracy = 0.0;
};

struct ConfoundCell {
    double mu_sq = 0.0;
    ErrorReport report;  // classifier_id names the rule
};

struct VarianceCell {
    std::size_t p = 0;
    std::size_t nu = 0;
    std::string noise;
    double var_t_sa = 0.0;
    double ratio = 0.0;  // var / (p / nu)
    std::size_t reps = 0;
};

struct PairedComparison {
    ErrorReport t_sa;
    ErrorReport lr;
    double diff_total = 0.0;  // t_sa.total() - lr.total()
    double diff_se = 0.0;     // SE of the paired difference
};

struct BenchmarkReport {
    std::vector<ErrorReport> reports;
    // (classifier id, reason) for rules not applicable to the plan.
    std::vector<std::pair<std::string, std::string>> skipped;
};

struct RidgeSearchResult {
    double best_ridge = 0.0;
    double success_rate = 0.0;  // class-averaged, at best_ridge
    std::vector<std::pair<double, double>> per_ridge;
};

// Monte Carlo error estimate: replicate r draws its own stream derived
// from (master_seed, r), generates a fresh instance, trains, classifies.
// z truth is stratified by replicate parity (even -> X, odd -> Y) for
// equal-precision per-class estimates; the ModelSpec z_source is overridden.
// Identical output for any worker count.
ErrorReport estimate_error(const ClassifierSpec& classifier, const ModelSpec& spec,
                           std::size_t reps, std::uint64_t master_seed,
                           std::size_t workers = 1);

// delta = delta_critical(c, nu, p, q) per cell, error estimated at each.
// Cell seeds derive from (master_seed, cell index); the per-cell seed is
// recorded in its report.
SweepTable sweep_c(const ClassifierSpec& classifier, const std::vector<double>& c_grid,
                   const std::vector<SweepBase>& bases, const ModelSpec& tmpl,
                   std::size_t reps, std::uint64_t master_seed, std::size_t workers = 1);

// Bisection for the delta reaching target class-balanced accuracy, using
// common random numbers across probes (every probe reuses the replicate
// streams). Tolerance 0.01 on accuracy, at most 30 bisection steps;
// monotonicity is verified on the final bracket.
CalibrationResult calibrate_delta(const ClassifierSpec& classifier, const ModelSpec& tmpl,
                                  double target_accuracy, std::size_t reps_per_probe,
                                  std::uint64_t master_seed, double delta_min,
                                  double delta_max, std::size_t workers = 1);

// Gaussian location-scale classes: X ~ N(0, sigma_x_sq I), Y has every
// component offset by sqrt(mu_sq) and variance sigma_y_sq. Evaluates the
// four location rules (nn, nn_sa, centroid, centroid_sa) per grid value on
// shared instances.
std::vector<ConfoundCell> confound_sweep(double sigma_x_sq, double sigma_y_sq,
                                         const std::vector<double>& mu_sq_grid,
                                         std::size_t m, std::size_t n, std::size_t p,
                                         std::size_t reps, std::uint64_t master_seed,
                                         std::size_t workers = 1);

// Empirical variance of the scale-adjusted centroid statistic at delta = 0,
// reported with the ratio to p/nu per (p, nu) cell.
std::vector<VarianceCell> variance_scaling_check(
    const std::vector<std::array<std::size_t, 2>>& grid,  // (p, nu)
    const ModelSpec& tmpl, std::size_t reps, std::uint64_t master_seed,
    std::size_t workers = 1);

// Scale-adjusted centroid vs the exact likelihood-ratio rule on identical
// instances (paired design). Requires the LR admissibility domain.
PairedComparison oracle_compare(const ModelSpec& spec, std::size_t reps,
                                std::uint64_t master_seed, std::size_t workers = 1);

// Subsampling protocol on a labeled dataset: per replicate, one split
// shared by every classifier, evaluated on the held-out test sets.
// Standard errors are replicate-level (test points sharing a training set
// are correlated, so the binomial formula does not apply).
BenchmarkReport dataset_benchmark(const Dataset& dataset, const SplitPlan& plan,
                                  const std::vector<ClassifierSpec>& classifiers,
                                  std::size_t reps, std::uint64_t master_seed,
                                  std::size_t workers = 1);

// Grid search for the ridge maximizing naive Bayes class-averaged success
// on synthetic instances (common random numbers across the grid; ties go
// to the smallest ridge).
RidgeSearchResult ridge_oracle_select(const ModelSpec& spec, const std::vector<double>& ridge_grid,
                                      std::size_t reps, std::uint64_t master_seed,
                                      std::size_t workers = 1);

}  // namespace hdc
