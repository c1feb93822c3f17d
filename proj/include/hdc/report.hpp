#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hdc/harness.hpp"

namespace hdc {

inline constexpr const char* kToolName = "hdc";
inline constexpr const char* kToolVersion = "0.1.0";

enum class ReportFormat { Csv, Json };

// Provenance carried by every report: the command and the fully resolved
// configuration (after defaults and config-file overrides), in emission
// order. Reports contain no timestamps, so identical runs produce
// identical bytes.
struct ReportMeta {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
};

// Each writer renders the same content as CSV (provenance in '#' comment
// lines, shortest round-trip numbers) or as a single JSON document.
std::string render_error_reports(const ReportMeta& meta, ReportFormat format,
                                 const std::vector<ErrorReport>& reports,
                                 const std::vector<std::pair<std::string, std::string>>& skipped =
                                     {});

std::string render_sweep_table(const ReportMeta& meta, ReportFormat format,
                               const SweepTable& table);

struct CalibrationRow {
    std::size_t m = 0;
    CalibrationResult result;
    std::uint64_t seed = 0;
};
std::string render_calibration(const ReportMeta& meta, ReportFormat format,
                               const std::vector<CalibrationRow>& rows);

std::string render_confound(const ReportMeta& meta, ReportFormat format,
                            const std::vector<ConfoundCell>& cells);

std::string render_variance(const ReportMeta& meta, ReportFormat format,
                            const std::vector<VarianceCell>& cells);

std::string render_oracle_compare(const ReportMeta& meta, ReportFormat format,
                                  const PairedComparison& cmp);

std::string render_ridge_search(const ReportMeta& meta, ReportFormat format,
                                const RidgeSearchResult& result);

// Writes to a temporary file in the destination directory, then renames
// into place; "-" writes to stdout.
void write_report(const std::string& path, const std::string& content);

}  // namespace hdc
