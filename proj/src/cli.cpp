#include "hdc/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdc/report.hpp"

namespace hdc {

namespace {

using KV = std::vector<std::pair<std::string, std::string>>;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& tok, const std::string& what) {
    double v = 0.0;
    const char* last = tok.data() + tok.size();
    auto res = std::from_chars(tok.data(), last, v);
    require(res.ec == std::errc() && res.ptr == last && std::isfinite(v),
            what + ": expected a finite number, got '" + tok + "'");
    return v;
}

std::size_t parse_size(const std::string& tok, const std::string& what) {
    std::size_t v = 0;
    const char* last = tok.data() + tok.size();
    auto res = std::from_chars(tok.data(), last, v);
    require(res.ec == std::errc() && res.ptr == last,
            what + ": expected a nonnegative integer, got '" + tok + "'");
    return v;
}

std::vector<double> parse_double_list(const std::string& csv, const std::string& what) {
    require(!csv.empty(), what + ": empty list");
    std::vector<double> out;
    for (const std::string& tok : split(csv, ',')) out.push_back(parse_double(tok, what));
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& csv, const std::string& what) {
    require(!csv.empty(), what + ": empty list");
    std::vector<std::size_t> out;
    for (const std::string& tok : split(csv, ',')) out.push_back(parse_size(tok, what));
    return out;
}

char parse_delimiter(const std::string& s) {
    if (s == "\\t" || s == "tab") return '\t';
    require(s.size() == 1, "--delimiter must be a single character (or 'tab')");
    return s[0];
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// ---- option bundles -------------------------------------------------------

struct CommonCli {
    std::uint64_t seed = 1;
    std::size_t workers = 0;  // 0 = machine parallelism
    std::string out = "-";
    std::string format = "csv";
    std::string config_path;

    std::size_t resolved_workers() const {
        if (workers > 0) return workers;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? hw : 1;
    }
    ReportFormat report_format() const {
        return format == "json" ? ReportFormat::Json : ReportFormat::Csv;
    }
};

void add_common_flags(CLI::App* sub, CommonCli& c) {
    sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
    sub->add_option("--workers", c.workers, "worker threads (default: machine parallelism)");
    sub->add_option("--out", c.out, "output path ('-' = stdout)")->capture_default_str();
    sub->add_option("--format", c.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--config", c.config_path,
                    "flat JSON config file; command-line flags override its values");
}

struct ModelCli {
    std::size_t p = 2000;
    std::size_t m = 10;
    std::size_t n = 0;  // 0 = same as m
    double q = 1.0;
    double c = 0.0;
    double delta = 0.0;
    std::string noise = "iid";
    std::string ma_coeffs;
    std::string garch;
    std::string pattern = "random_shared_support";
    CLI::Option* c_opt = nullptr;
    CLI::Option* delta_opt = nullptr;
};

void add_size_flags(CLI::App* sub, ModelCli& mc, bool with_n = true) {
    sub->add_option("--p", mc.p, "dimension")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--m", mc.m, "X training size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_n)
        sub->add_option("--n", mc.n, "Y training size (default: same as --m)")
            ->check(CLI::PositiveNumber);
    sub->add_option("--q", mc.q, "sparsity index in (0,1]")->capture_default_str();
}

void add_signal_flags(CLI::App* sub, ModelCli& mc) {
    mc.c_opt = sub->add_option("--c", mc.c,
                               "signal constant; resolves delta = c*(nu*p*q^2)^(-1/4)");
    mc.delta_opt = sub->add_option("--delta", mc.delta, "signal strength directly");
    mc.c_opt->excludes(mc.delta_opt);
    mc.delta_opt->excludes(mc.c_opt);
}

void add_noise_flags(CLI::App* sub, ModelCli& mc) {
    sub->add_option("--noise", mc.noise, "noise process")
        ->check(CLI::IsMember({"iid", "ma", "garch"}))
        ->capture_default_str();
    sub->add_option("--ma-coeffs", mc.ma_coeffs,
                    "comma-separated MA coefficients (rescaled to unit variance)");
    sub->add_option("--garch", mc.garch, "GARCH parameters alpha,beta");
}

void add_pattern_flag(CLI::App* sub, ModelCli& mc) {
    sub->add_option("--pattern", mc.pattern, "signal pattern mode")
        ->check(CLI::IsMember({"random_shared_support", "random_4_1"}))
        ->capture_default_str();
}

NoiseSpec make_noise(const ModelCli& mc) {
    if (mc.noise == "iid") {
        require(mc.ma_coeffs.empty(), "--ma-coeffs needs --noise ma");
        require(mc.garch.empty(), "--garch needs --noise garch");
        return NoiseSpec::iid();
    }
    if (mc.noise == "ma") {
        require(!mc.ma_coeffs.empty(), "--noise ma needs --ma-coeffs");
        return NoiseSpec::moving_average(parse_double_list(mc.ma_coeffs, "--ma-coeffs"));
    }
    require(!mc.garch.empty(), "--noise garch needs --garch alpha,beta");
    const std::vector<double> g = parse_double_list(mc.garch, "--garch");
    require(g.size() == 2, "--garch takes exactly two values: alpha,beta");
    return NoiseSpec::garch(g[0], g[1]);
}

ModelSpec make_model(const ModelCli& mc) {
    ModelSpec spec;
    spec.p = mc.p;
    spec.m = mc.m;
    spec.n = mc.n > 0 ? mc.n : mc.m;
    spec.q = mc.q;
    spec.noise = make_noise(mc);
    spec.pattern_mode = mc.pattern == "random_4_1" ? PatternMode::Random41
                                                   : PatternMode::RandomSharedSupport;
    if (mc.c_opt && mc.c_opt->count() > 0)
        spec.delta = delta_critical(mc.c, spec.nu(), spec.p, spec.q);
    else if (mc.delta_opt && mc.delta_opt->count() > 0)
        spec.delta = mc.delta;
    spec.validate();
    return spec;
}

void warn_sparsity_floor(const ModelSpec& spec) {
    if (spec.delta > 0.0 && !sparsity_floor_ok(spec.q, spec.nu(), spec.p))
        std::cerr << "warning: q = " << format_double(spec.q)
                  << " is below the sparsity floor sqrt(nu/p) = "
                  << format_double(std::sqrt(static_cast<double>(spec.nu()) /
                                             static_cast<double>(spec.p)))
                  << "; critical-rate behavior is not guaranteed in this regime\n";
}

void echo_model(KV& kv, const ModelCli& mc, const ModelSpec& spec) {
    kv.emplace_back("p", std::to_string(spec.p));
    kv.emplace_back("m", std::to_string(spec.m));
    kv.emplace_back("n", std::to_string(spec.n));
    kv.emplace_back("q", format_double(spec.q));
    if (mc.c_opt && mc.c_opt->count() > 0) kv.emplace_back("c", format_double(mc.c));
    kv.emplace_back("delta", format_double(spec.delta));
    kv.emplace_back("noise", spec.noise.describe());
    kv.emplace_back("pattern", mc.pattern);
}

struct ClassifierCli {
    std::string name = "centroid_sa";
    std::size_t k = 1;
    double ridge = 0.1;
    double cost = 1.0;
    std::size_t bandwidth = 1;
};

void add_classifier_flags(CLI::App* sub, ClassifierCli& cc, bool with_name = true) {
    if (with_name) {
        std::string help = "classifier rule (one of: ";
        for (const char* id : all_rule_ids()) help += std::string(id) + " ";
        help.back() = ')';
        sub->add_option("--classifier", cc.name, help)->capture_default_str();
    }
    sub->add_option("--k", cc.k, "neighbor count for nn rules")->check(CLI::PositiveNumber);
    sub->add_option("--ridge", cc.ridge, "naive Bayes ridge")->capture_default_str();
    sub->add_option("--cost", cc.cost, "SVM cost parameter")->capture_default_str();
    sub->add_option("--bandwidth", cc.bandwidth, "covariance band half-width")
        ->capture_default_str();
}

ClassifierSpec make_classifier(const ClassifierCli& cc, const std::string& name) {
    ClassifierSpec spec = ClassifierSpec::from_id(name);
    spec.nn_k = cc.k;
    spec.nb_ridge = cc.ridge;
    spec.svm_cost = cc.cost;
    spec.sv_bandwidth = cc.bandwidth;
    return spec;
}

void emit(const CommonCli& common, const std::string& content) {
    write_report(common.out, content);
}

// ---- config file ----------------------------------------------------------

std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config file " + path + ": " + e.what());
    }
    require(doc.is_object(), "config file " + path + " must be a flat JSON object");
    std::vector<std::string> out;
    for (const auto& [key, value] : doc.items()) {
        require(key != "config", "config file cannot set 'config'");
        if (value.is_boolean()) {
            if (value.get<bool>()) out.push_back("--" + key);
        } else if (value.is_string()) {
            out.push_back("--" + key);
            out.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            out.push_back("--" + key);
            out.push_back(value.dump());
        } else {
            throw std::invalid_argument("config key '" + key +
                                        "' must be a scalar (string, number, or bool)");
        }
    }
    return out;
}

// ---- commands -------------------------------------------------------------

struct SimulateCmd {
    CommonCli common;
    ModelCli model;
    ClassifierCli cls;
    std::size_t reps = 4000;

    void run() const {
        const ClassifierSpec rule = make_classifier(cls, cls.name);
        const ModelSpec spec = make_model(model);
        warn_sparsity_floor(spec);
        const ErrorReport report = estimate_error(rule, spec, reps, common.seed,
                                                  common.resolved_workers());
        ReportMeta meta;
        meta.command = "simulate";
        meta.config.emplace_back("classifier", rule.describe());
        echo_model(meta.config, model, spec);
        meta.config.emplace_back("reps", std::to_string(reps));
        meta.config.emplace_back("seed", std::to_string(common.seed));
        emit(common, render_error_reports(meta, common.report_format(), {report}));
    }
};

struct SweepCCmd {
    CommonCli common;
    ModelCli model;
    ClassifierCli cls;
    std::string c_grid;
    std::string bases;
    std::size_t reps = 4000;

    void run() const {
        const ClassifierSpec rule = make_classifier(cls, cls.name);
        const std::vector<double> cs = parse_double_list(c_grid, "--c-grid");
        for (double c : cs) require(c > 0.0, "--c-grid values must be positive");
        std::vector<SweepBase> parsed_bases;
        for (const std::string& tok : split(bases, ',')) {
            const std::vector<std::string> parts = split(tok, ':');
            require(parts.size() == 3, "--bases entries must look like p:nu:q, got '" + tok + "'");
            SweepBase b;
            b.p = parse_size(parts[0], "--bases p");
            b.nu = parse_size(parts[1], "--bases nu");
            b.q = parse_double(parts[2], "--bases q");
            require(b.p >= 1 && b.nu >= 1, "--bases needs p >= 1 and nu >= 1");
            parsed_bases.push_back(b);
        }
        ModelCli tmpl_cli = model;
        const ModelSpec tmpl = make_model(tmpl_cli);
        const SweepTable table = sweep_c(rule, cs, parsed_bases, tmpl, reps, common.seed,
                                         common.resolved_workers());
        ReportMeta meta;
        meta.command = "sweep-c";
        meta.config.emplace_back("classifier", rule.describe());
        meta.config.emplace_back("c_grid", c_grid);
        meta.config.emplace_back("bases", bases);
        meta.config.emplace_back("noise", tmpl.noise.describe());
        meta.config.emplace_back("pattern", model.pattern);
        meta.config.emplace_back("reps", std::to_string(reps));
        meta.config.emplace_back("seed", std::to_string(common.seed));
        emit(common, render_sweep_table(meta, common.report_format(), table));
    }
};

struct CalibrateCmd {
    CommonCli common;
    ModelCli model;
    ClassifierCli cls;
    double target = 0.8;
    std::string m_grid;
    double delta_min = 0.0;
    double delta_max = 1.0;
    std::size_t reps = 2000;

    void run() const {
        const ClassifierSpec rule = make_classifier(cls, cls.name);
        const std::vector<std::size_t> ms =
            m_grid.empty() ? std::vector<std::size_t>{model.m} : parse_size_list(m_grid, "--m-grid");
        std::vector<CalibrationRow> rows;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            ModelCli probe_cli = model;
            probe_cli.m = ms[i];
            probe_cli.n = ms[i];
            const ModelSpec tmpl = make_model(probe_cli);
            CalibrationRow row;
            row.m = ms[i];
            row.seed = derive_seed(common.seed, i);
            row.result = calibrate_delta(rule, tmpl, target, reps, row.seed, delta_min,
                                         delta_max, common.resolved_workers());
            rows.push_back(row);
        }
        ReportMeta meta;
        meta.command = "calibrate";
        meta.config.emplace_back("classifier", rule.describe());
        meta.config.emplace_back("target", format_double(target));
        meta.config.emplace_back("m_grid", m_grid.empty() ? std::to_string(model.m) : m_grid);
        meta.config.emplace_back("p", std::to_string(model.p));
        meta.config.emplace_back("q", format_double(model.q));
        meta.config.emplace_back("noise", make_noise(model).describe());
        meta.config.emplace_back("pattern", model.pattern);
        meta.config.emplace_back("delta_min", format_double(delta_min));
        meta.config.emplace_back("delta_max", format_double(delta_max));
        meta.config.emplace_back("reps_per_probe", std::to_string(reps));
        meta.config.emplace_back("seed", std::to_string(common.seed));
        emit(common, render_calibration(meta, common.report_format(), rows));
    }
};

struct ConfoundCmd {
    CommonCli common;
    double sigma_x2 = 1.0;
    double sigma_y2 = 2.0;
    std::string mu2_grid = "0,0.2,0.6,1.5";
    std::size_t m = 5;
    std::size_t n = 5;
    std::size_t p = 2000;
    std::size_t reps = 500;

    void run() const {
        const std::vector<double> grid = parse_double_list(mu2_grid, "--mu2-grid");
        const auto cells = confound_sweep(sigma_x2, sigma_y2, grid, m, n, p, reps, common.seed,
                                          common.resolved_workers());
        ReportMeta meta;
        meta.command = "confound";
        meta.config.emplace_back("sigma_x2", format_double(sigma_x2));
        meta.config.emplace_back("sigma_y2", format_double(sigma_y2));
        meta.config.emplace_back("mu2_grid", mu2_grid);
        meta.config.emplace_back("m", std::to_string(m));
        meta.config.emplace_back("n", std::to_string(n));
        meta.config.emplace_back("p", std::to_string(p));
        meta.config.emplace_back("reps", std::to_string(reps));
        meta.config.emplace_back("seed", std::to_string(common.seed));
        emit(common, render_confound(meta, common.report_format(), cells));
    }
};

struct VarianceCheckCmd {
    CommonCli common;
    ModelCli model;
    std::string p_grid = "500,1000,2000";
    std::string nu_grid = "4,8";
    std::size_t reps = 2000;

    void run() const {
        const std::vector<std::size_t> ps = parse_size_list(p_grid, "--p-grid");
        const std::vector<std::size_t> nus = parse_size_list(nu_grid, "--nu-grid");
        std::vector<std::array<std::size_t, 2>> grid;
        for (std::size_t p : ps)
            for (std::size_t nu : nus) grid.push_back({p, nu});
        ModelCli tmpl_cli = model;
        const ModelSpec tmpl = make_model(tmpl_cli);
        const auto cells = variance_scaling_check(grid, tmpl, reps, common.seed,
                                                  common.resolved_workers());
        ReportMeta meta;
        meta.command = "variance-check";
        meta.config.emplace_back("p_grid", p_grid);
        meta.config.emplace_back("nu_grid", nu_grid);
        meta.config.emplace_back("noise", tmpl.noise.describe());
        meta.config.emplace_back("reps", std::to_string(reps));
        meta.config.emplace_back("seed", std::to_string(common.seed));
        emit(common, render_variance(meta, common.report_format(), cells));
    }
};

struct OracleCompareCmd {
    CommonCli common;
    ModelCli model;
    std::size_t reps = 2000;

    void run() const {
        ModelCli cli = model;
        cli.pattern = "random_4_1";
        ModelSpec spec = make_model(cli);
        warn_sparsity_floor(spec);
        const PairedComparison cmp =
            oracle_compare(spec, reps, common.seed, common.resolved_workers());
        ReportMeta meta;
        meta.command = "oracle-compare";
        echo_model(meta.config, cli, spec);
        meta.config.emplace_back("reps", std::to_string(reps));
        meta.config.emplace_back("seed", std::to_string(common.seed));
        emit(common, render_oracle_compare(meta, common.report_format(), cmp));
    }
};

struct BenchDatasetCmd {
    CommonCli common;
    ClassifierCli cls;
    std::string features;
    std::string labels;
    std::size_t label_col = 0;
    std::string positive;
    std::string delimiter = ",";
    bool skip_header = false;
    std::size_t m = 20;
    std::size_t n = 20;
    std::size_t test_per_class = 0;  // 0 = count_X - m (the protocol default)
    std::string classifiers = "centroid,centroid_sa,nn,nn_sa,bayes,svm,sv";
    std::size_t reps = 2000;

    void run() const {
        const char delim = parse_delimiter(delimiter);
        std::vector<ClassifierSpec> rules;
        for (const std::string& name : split(classifiers, ','))
            rules.push_back(make_classifier(cls, name));

        std::vector<Vec> rows = load_features_csv(features, delim, skip_header);
        const Dataset dataset =
            attach_labels(std::move(rows), labels, label_col, positive, delim, skip_header);
        require(dataset.count_x > m, "class X has " + std::to_string(dataset.count_x) +
                                         " rows; need more than m = " + std::to_string(m));
        SplitPlan plan;
        plan.m = m;
        plan.n = n;
        plan.test_per_class = test_per_class > 0 ? test_per_class : dataset.count_x - m;

        const BenchmarkReport bench = dataset_benchmark(dataset, plan, rules, reps, common.seed,
                                                        common.resolved_workers());
        ReportMeta meta;
        meta.command = "bench-dataset";
        meta.config.emplace_back("features", features);
        meta.config.emplace_back("labels", labels);
        meta.config.emplace_back("label_col", std::to_string(label_col));
        meta.config.emplace_back("positive", positive);
        meta.config.emplace_back("delimiter", delimiter);
        meta.config.emplace_back("skip_header", skip_header ? "true" : "false");
        meta.config.emplace_back("count_X", std::to_string(dataset.count_x));
        meta.config.emplace_back("count_Y", std::to_string(dataset.count_y));
        meta.config.emplace_back("m", std::to_string(plan.m));
        meta.config.emplace_back("n", std::to_string(plan.n));
        meta.config.emplace_back("test_per_class", std::to_string(plan.test_per_class));
        meta.config.emplace_back("classifiers", classifiers);
        meta.config.emplace_back("reps", std::to_string(reps));
        meta.config.emplace_back("seed", std::to_string(common.seed));
        emit(common,
             render_error_reports(meta, common.report_format(), bench.reports, bench.skipped));
    }
};

struct RidgeSearchCmd {
    CommonCli common;
    ModelCli model;
    std::string ridge_grid;
    std::size_t reps = 2000;

    void run() const {
        std::vector<double> grid;
        if (ridge_grid.empty()) {
            // Nine-point logarithmic grid spanning [0.01, 1].
            for (int i = 0; i <= 8; ++i) grid.push_back(std::pow(10.0, -2.0 + 0.25 * i));
        } else {
            grid = parse_double_list(ridge_grid, "--ridge-grid");
        }
        const ModelSpec spec = make_model(model);
        warn_sparsity_floor(spec);
        const RidgeSearchResult result =
            ridge_oracle_select(spec, grid, reps, common.seed, common.resolved_workers());
        ReportMeta meta;
        meta.command = "ridge-search";
        echo_model(meta.config, model, spec);
        std::vector<std::string> grid_text;
        for (double g : grid) grid_text.push_back(format_double(g));
        meta.config.emplace_back("ridge_grid", join(grid_text, ","));
        meta.config.emplace_back("reps", std::to_string(reps));
        meta.config.emplace_back("seed", std::to_string(common.seed));
        emit(common, render_ridge_search(meta, common.report_format(), result));
    }
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Monte Carlo laboratory for high-dimension / low-sample-size "
                 "centroid-style classification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    SimulateCmd simulate;
    {
        auto* sub = app.add_subcommand("simulate", "error estimate for one classifier");
        add_common_flags(sub, simulate.common);
        add_size_flags(sub, simulate.model);
        add_signal_flags(sub, simulate.model);
        add_noise_flags(sub, simulate.model);
        add_pattern_flag(sub, simulate.model);
        add_classifier_flags(sub, simulate.cls);
        sub->add_option("--reps", simulate.reps, "Monte Carlo replicates")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback([&simulate] { simulate.run(); });
    }

    SweepCCmd sweep;
    {
        auto* sub = app.add_subcommand("sweep-c", "error rates across a c grid at the "
                                                  "critical delta scaling");
        add_common_flags(sub, sweep.common);
        add_noise_flags(sub, sweep.model);
        add_pattern_flag(sub, sweep.model);
        add_classifier_flags(sub, sweep.cls);
        sub->add_option("--c-grid", sweep.c_grid, "comma-separated c values")->required();
        sub->add_option("--bases", sweep.bases,
                        "comma-separated p:nu:q triples, e.g. 500:8:0.2,2000:8:0.1")
            ->required();
        sub->add_option("--reps", sweep.reps, "replicates per cell")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback([&sweep] { sweep.run(); });
    }

    CalibrateCmd calibrate;
    {
        auto* sub = app.add_subcommand("calibrate",
                                       "bisect for the delta meeting a target accuracy");
        add_common_flags(sub, calibrate.common);
        add_size_flags(sub, calibrate.model, /*with_n=*/false);
        add_noise_flags(sub, calibrate.model);
        add_pattern_flag(sub, calibrate.model);
        add_classifier_flags(sub, calibrate.cls);
        sub->add_option("--target", calibrate.target, "target class-balanced accuracy")
            ->required();
        sub->add_option("--m-grid", calibrate.m_grid,
                        "comma-separated training sizes (m = n per entry; default: --m)");
        sub->add_option("--delta-min", calibrate.delta_min, "bracket lower end")
            ->capture_default_str();
        sub->add_option("--delta-max", calibrate.delta_max, "bracket upper end")
            ->capture_default_str();
        sub->add_option("--reps", calibrate.reps, "replicates per probe")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback([&calibrate] { calibrate.run(); });
    }

    ConfoundCmd confound;
    {
        auto* sub = app.add_subcommand("confound", "location rules under unequal class "
                                                   "variances across a mu^2 grid");
        add_common_flags(sub, confound.common);
        sub->add_option("--sigma-x2", confound.sigma_x2, "X class variance")
            ->capture_default_str();
        sub->add_option("--sigma-y2", confound.sigma_y2, "Y class variance")
            ->capture_default_str();
        sub->add_option("--mu2-grid", confound.mu2_grid,
                        "comma-separated per-component squared mean offsets")
            ->capture_default_str();
        sub->add_option("--m", confound.m, "X training size")->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--n", confound.n, "Y training size")->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--p", confound.p, "dimension")->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--reps", confound.reps, "replicates per cell")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback([&confound] { confound.run(); });
    }

    VarianceCheckCmd variance;
    {
        auto* sub = app.add_subcommand("variance-check", "variance of the scale-adjusted "
                                                         "statistic at zero signal");
        add_common_flags(sub, variance.common);
        add_noise_flags(sub, variance.model);
        sub->add_option("--p-grid", variance.p_grid, "dimensions")->capture_default_str();
        sub->add_option("--nu-grid", variance.nu_grid, "training sizes (m = n = nu)")
            ->capture_default_str();
        sub->add_option("--reps", variance.reps, "replicates per cell")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback([&variance] { variance.run(); });
    }

    OracleCompareCmd oracle;
    {
        auto* sub = app.add_subcommand("oracle-compare",
                                       "scale-adjusted centroid vs the exact likelihood-"
                                       "ratio rule on paired instances");
        add_common_flags(sub, oracle.common);
        add_size_flags(sub, oracle.model);
        add_signal_flags(sub, oracle.model);
        add_noise_flags(sub, oracle.model);
        sub->add_option("--reps", oracle.reps, "paired replicates")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback([&oracle] { oracle.run(); });
    }

    BenchDatasetCmd bench;
    {
        auto* sub = app.add_subcommand("bench-dataset", "subsampling benchmark on a "
                                                        "labeled feature file");
        add_common_flags(sub, bench.common);
        sub->add_option("--features", bench.features, "feature CSV path")->required();
        sub->add_option("--labels", bench.labels, "label file path")->required();
        sub->add_option("--label-col", bench.label_col, "label column index")
            ->capture_default_str();
        sub->add_option("--positive", bench.positive, "token marking class X")->required();
        sub->add_option("--delimiter", bench.delimiter, "field delimiter (or 'tab')")
            ->capture_default_str();
        sub->add_flag("--skip-header", bench.skip_header, "skip the first line of each file");
        sub->add_option("--m", bench.m, "X training size")->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--n", bench.n, "Y training size")->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--test-per-class", bench.test_per_class,
                        "held-out test points per class (default: count_X - m)");
        sub->add_option("--classifiers", bench.classifiers, "comma-separated rule names")
            ->capture_default_str();
        add_classifier_flags(sub, bench.cls, /*with_name=*/false);
        sub->add_option("--reps", bench.reps, "subsampling replicates")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback([&bench] { bench.run(); });
    }

    RidgeSearchCmd ridge;
    {
        auto* sub = app.add_subcommand("ridge-search", "naive Bayes ridge grid search on "
                                                       "synthetic instances");
        add_common_flags(sub, ridge.common);
        add_size_flags(sub, ridge.model);
        add_signal_flags(sub, ridge.model);
        add_noise_flags(sub, ridge.model);
        add_pattern_flag(sub, ridge.model);
        sub->add_option("--ridge-grid", ridge.ridge_grid,
                        "comma-separated ridge values (default: log grid over [0.01, 1])");
        sub->add_option("--reps", ridge.reps, "replicates per ridge")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback([&ridge] { ridge.run(); });
    }

    // Apply the config file (if any) by splicing its tokens in front of the
    // user's flags: with TakeLast multi-option policy, explicit flags win.
    std::vector<std::string> tokens;
    tokens.push_back(argc > 0 ? argv[0] : "hdc");
    std::vector<std::string> user(argv + std::min(argc, 1), argv + argc);
    try {
        std::string config_path;
        for (std::size_t i = 0; i < user.size(); ++i) {
            if (user[i] == "--config" && i + 1 < user.size())
                config_path = user[i + 1];
            else if (user[i].rfind("--config=", 0) == 0)
                config_path = user[i].substr(9);
        }
        if (!config_path.empty()) {
            require(!user.empty() && !user.front().empty() && user.front()[0] != '-',
                    "--config requires a leading subcommand");
            const std::vector<std::string> cfg = config_tokens(config_path);
            tokens.push_back(user.front());
            tokens.insert(tokens.end(), cfg.begin(), cfg.end());
            tokens.insert(tokens.end(), user.begin() + 1, user.end());
        } else {
            tokens.insert(tokens.end(), user.begin(), user.end());
        }

        std::vector<const char*> cargv;
        cargv.reserve(tokens.size());
        for (const std::string& t : tokens) cargv.push_back(t.c_str());
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::CallForVersion& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const IoError& e) {
        std::cerr << "hdc: i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hdc: usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hdc: error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace hdc
