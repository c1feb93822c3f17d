#include "hdc/report.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace hdc {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

class CsvBuilder {
public:
    CsvBuilder(const ReportMeta& meta, std::vector<std::string> columns)
        : columns_(std::move(columns)) {
        out_ += "# tool = ";
        out_ += kToolName;
        out_ += ' ';
        out_ += kToolVersion;
        out_ += "\n# command = " + meta.command + "\n";
        for (const auto& [key, value] : meta.config)
            out_ += "# " + key + " = " + value + "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out_ += ',';
            out_ += columns_[i];
        }
        out_ += '\n';
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ += ',';
            out_ += csv_field(fields[i]);
        }
        out_ += '\n';
    }

    std::string str() && { return std::move(out_); }

private:
    std::vector<std::string> columns_;
    std::string out_;
};

Json json_shell(const ReportMeta& meta) {
    Json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = meta.command;
    Json config = Json::object();
    for (const auto& [key, value] : meta.config) config[key] = value;
    doc["config"] = std::move(config);
    return doc;
}

std::string finish(Json doc) { return doc.dump(2) + "\n"; }

Json report_json(const ErrorReport& r) {
    Json j;
    j["classifier"] = r.classifier_id;
    j["err_X"] = r.err_x;
    j["err_Y"] = r.err_y;
    j["total"] = r.total();
    j["se_X"] = r.se_x;
    j["se_Y"] = r.se_y;
    j["reps"] = r.reps;
    j["seed"] = r.seed;
    j["spec_digest"] = r.spec_digest;
    return j;
}

std::vector<std::string> report_fields(const ErrorReport& r) {
    return {r.classifier_id,     format_double(r.err_x), format_double(r.err_y),
            format_double(r.total()), format_double(r.se_x), format_double(r.se_y),
            std::to_string(r.reps),   std::to_string(r.seed), r.spec_digest};
}

}  // namespace

std::string render_error_reports(const ReportMeta& meta, ReportFormat format,
                                 const std::vector<ErrorReport>& reports,
                                 const std::vector<std::pair<std::string, std::string>>& skipped) {
    if (format == ReportFormat::Json) {
        Json doc = json_shell(meta);
        Json rows = Json::array();
        for (const ErrorReport& r : reports) rows.push_back(report_json(r));
        doc["rows"] = std::move(rows);
        if (!skipped.empty()) {
            Json sk = Json::array();
            for (const auto& [id, reason] : skipped)
                sk.push_back(Json{{"classifier", id}, {"reason", reason}});
            doc["skipped"] = std::move(sk);
        }
        return finish(std::move(doc));
    }
    CsvBuilder csv(meta, {"classifier", "err_X", "err_Y", "total", "se_X", "se_Y", "reps",
                          "seed", "spec_digest", "note"});
    for (const ErrorReport& r : reports) {
        auto fields = report_fields(r);
        fields.push_back("");
        csv.row(fields);
    }
    for (const auto& [id, reason] : skipped)
        csv.row({id, "", "", "", "", "", "", "", "", "skipped: " + reason});
    return std::move(csv).str();
}

std::string render_sweep_table(const ReportMeta& meta, ReportFormat format,
                               const SweepTable& table) {
    if (format == ReportFormat::Json) {
        Json doc = json_shell(meta);
        Json rows = Json::array();
        for (const SweepCell& cell : table) {
            Json j;
            j["c"] = cell.c;
            j["p"] = cell.p;
            j["nu"] = cell.nu;
            j["q"] = cell.q;
            j["delta"] = cell.delta;
            j["err_X"] = cell.report.err_x;
            j["err_Y"] = cell.report.err_y;
            j["total"] = cell.report.total();
            j["se_X"] = cell.report.se_x;
            j["se_Y"] = cell.report.se_y;
            j["reps"] = cell.report.reps;
            j["seed"] = cell.report.seed;
            j["classifier"] = cell.report.classifier_id;
            rows.push_back(std::move(j));
        }
        doc["rows"] = std::move(rows);
        return finish(std::move(doc));
    }
    CsvBuilder csv(meta, {"c", "p", "nu", "q", "delta", "err_X", "err_Y", "total", "se_X",
                          "se_Y", "reps", "seed"});
    for (const SweepCell& cell : table)
        csv.row({format_double(cell.c), std::to_string(cell.p), std::to_string(cell.nu),
                 format_double(cell.q), format_double(cell.delta),
                 format_double(cell.report.err_x), format_double(cell.report.err_y),
                 format_double(cell.report.total()), format_double(cell.report.se_x),
                 format_double(cell.report.se_y), std::to_string(cell.report.reps),
                 std::to_string(cell.report.seed)});
    return std::move(csv).str();
}

std::string render_calibration(const ReportMeta& meta, ReportFormat format,
                               const std::vector<CalibrationRow>& rows) {
    if (format == ReportFormat::Json) {
        Json doc = json_shell(meta);
        Json out = Json::array();
        for (const CalibrationRow& row : rows) {
            Json j;
            j["m"] = row.m;
            j["delta_star"] = row.result.delta_star;
            j["achieved_accuracy"] = row.result.achieved_accuracy;
            j["target_accuracy"] = row.result.target_accuracy;
            j["bracket_lo"] = row.result.bracket_lo;
            j["bracket_hi"] = row.result.bracket_hi;
            j["reps_per_probe"] = row.result.reps_per_probe;
            j["seed"] = row.seed;
            out.push_back(std::move(j));
        }
        doc["rows"] = std::move(out);
        return finish(std::move(doc));
    }
    CsvBuilder csv(meta, {"m", "delta_star", "achieved_accuracy", "target_accuracy",
                          "bracket_lo", "bracket_hi", "reps_per_probe", "seed"});
    for (const CalibrationRow& row : rows)
        csv.row({std::to_string(row.m), format_double(row.result.delta_star),
                 format_double(row.result.achieved_accuracy),
                 format_double(row.result.target_accuracy),
                 format_double(row.result.bracket_lo), format_double(row.result.bracket_hi),
                 std::to_string(row.result.reps_per_probe), std::to_string(row.seed)});
    return std::move(csv).str();
}

std::string render_confound(const ReportMeta& meta, ReportFormat format,
                            const std::vector<ConfoundCell>& cells) {
    if (format == ReportFormat::Json) {
        Json doc = json_shell(meta);
        Json rows = Json::array();
        for (const ConfoundCell& cell : cells) {
            Json j = report_json(cell.report);
            j.erase("spec_digest");
            Json row;
            row["mu_sq"] = cell.mu_sq;
            row.update(j);
            row["spec_digest"] = cell.report.spec_digest;
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        return finish(std::move(doc));
    }
    CsvBuilder csv(meta, {"mu_sq", "classifier", "err_X", "err_Y", "total", "se_X", "se_Y",
                          "reps", "seed"});
    for (const ConfoundCell& cell : cells)
        csv.row({format_double(cell.mu_sq), cell.report.classifier_id,
                 format_double(cell.report.err_x), format_double(cell.report.err_y),
                 format_double(cell.report.total()), format_double(cell.report.se_x),
                 format_double(cell.report.se_y), std::to_string(cell.report.reps),
                 std::to_string(cell.report.seed)});
    return std::move(csv).str();
}

std::string render_variance(const ReportMeta& meta, ReportFormat format,
                            const std::vector<VarianceCell>& cells) {
    if (format == ReportFormat::Json) {
        Json doc = json_shell(meta);
        Json rows = Json::array();
        for (const VarianceCell& cell : cells) {
            Json j;
            j["p"] = cell.p;
            j["nu"] = cell.nu;
            j["noise"] = cell.noise;
            j["var_t_sa"] = cell.var_t_sa;
            j["ratio"] = cell.ratio;
            j["reps"] = cell.reps;
            rows.push_back(std::move(j));
        }
        doc["rows"] = std::move(rows);
        return finish(std::move(doc));
    }
    CsvBuilder csv(meta, {"p", "nu", "noise", "var_t_sa", "ratio", "reps"});
    for (const VarianceCell& cell : cells)
        csv.row({std::to_string(cell.p), std::to_string(cell.nu), cell.noise,
                 format_double(cell.var_t_sa), format_double(cell.ratio),
                 std::to_string(cell.reps)});
    return std::move(csv).str();
}

std::string render_oracle_compare(const ReportMeta& meta, ReportFormat format,
                                  const PairedComparison& cmp) {
    if (format == ReportFormat::Json) {
        Json doc = json_shell(meta);
        Json rows = Json::array();
        rows.push_back(report_json(cmp.t_sa));
        rows.push_back(report_json(cmp.lr));
        doc["rows"] = std::move(rows);
        doc["diff_total"] = cmp.diff_total;
        doc["diff_se"] = cmp.diff_se;
        return finish(std::move(doc));
    }
    CsvBuilder csv(meta, {"classifier", "err_X", "err_Y", "total", "se_X", "se_Y", "reps",
                          "seed", "spec_digest", "diff_total", "diff_se"});
    for (const ErrorReport* r : {&cmp.t_sa, &cmp.lr}) {
        auto fields = report_fields(*r);
        fields.push_back(format_double(cmp.diff_total));
        fields.push_back(format_double(cmp.diff_se));
        csv.row(fields);
    }
    return std::move(csv).str();
}

std::string render_ridge_search(const ReportMeta& meta, ReportFormat format,
                                const RidgeSearchResult& result) {
    if (format == ReportFormat::Json) {
        Json doc = json_shell(meta);
        Json rows = Json::array();
        for (const auto& [ridge, success] : result.per_ridge) {
            Json j;
            j["ridge"] = ridge;
            j["success_rate"] = success;
            j["best"] = ridge == result.best_ridge;
            rows.push_back(std::move(j));
        }
        doc["rows"] = std::move(rows);
        doc["best_ridge"] = result.best_ridge;
        doc["success_rate"] = result.success_rate;
        return finish(std::move(doc));
    }
    CsvBuilder csv(meta, {"ridge", "success_rate", "best"});
    for (const auto& [ridge, success] : result.per_ridge)
        csv.row({format_double(ridge), format_double(success),
                 ridge == result.best_ridge ? "1" : "0"});
    return std::move(csv).str();
}

void write_report(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw IoError("write to stdout failed");
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace hdc
