#include "capplan/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "capplan/demand.hpp"
#include "capplan/growth.hpp"
#include "capplan/reports.hpp"
#include "capplan/scaling.hpp"
#include "capplan/scenario.hpp"

namespace fs = std::filesystem;

namespace capplan {

namespace {

constexpr const char* kConfigEnvVar = "CAPPLAN_CONFIG";

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    for (const std::string& item : split_list(text)) {
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size())
            throw usage_error(std::string("cannot parse ") + what + " value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (double v : parse_double_list(text, what)) out.push_back(int(v));
    return out;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot write '" + path.string() + "'");
    return out;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out = open_output(path);
    out << j.dump(2) << '\n';
}

minute_t parse_date_or_throw(const std::string& text) {
    auto m = parse_date(text);
    if (!m) throw usage_error("cannot parse date '" + text + "' (expected YYYY-MM-DD)");
    return *m;
}

std::string sanitized(const std::string& name) {
    std::string out = name;
    for (char& c : out)
        if (c == '/' || c == '\\' || c == ' ' || c == ':') c = '_';
    return out;
}

void parse_cell_ref(const std::string& text, int& cpus, std::string& clock) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw usage_error("cell reference '" + text + "' must look like '52:333/4'");
    cpus = std::atoi(text.substr(0, colon).c_str());
    clock = text.substr(colon + 1);
}

// ---------------------------------------------------------------------------
// synthetic data generation shared by `synth` and `pipeline`

TrafficProfile build_profile(const RunConfig& cfg) {
    TrafficProfile component = unimodal_profile(cfg.shape, cfg.bin_minutes);
    TrafficProfile aggregate = coastal_profile(component, cfg.shift_hours,
                                               {cfg.east_weight, 1.0 - cfg.east_weight});
    return aggregate.normalized();
}

struct SynthData {
    MetricSeries metrics;
    std::vector<std::pair<minute_t, double>> truth;
};

SynthData synthesize_days(const RunConfig& cfg, int days) {
    if (days < 1) throw domain_error("need at least one day of synthetic data");
    const TrafficProfile profile = build_profile(cfg);
    const minute_t start = parse_date_or_throw(cfg.start_date);

    SynthData out;
    for (int d = 0; d < days; ++d) {
        const double scale = cfg.base_scale * std::exp(cfg.weekly_growth * double(d) / 7.0);
        SimulatedDay day =
            generate_day(profile, scale, cfg.coefficients, cfg.noise, derive_seed(cfg.seed, d),
                         start + minute_t(d) * kMinutesPerDay, cfg.regressor_noise);
        if (d == 0) {
            out.metrics.regressor_names = day.metrics.regressor_names;
            out.metrics.sample_interval = day.metrics.sample_interval;
        }
        for (std::size_t i = 0; i < day.metrics.samples.size(); ++i) {
            out.truth.emplace_back(day.metrics.samples[i].timestamp, day.true_demand[i]);
            out.metrics.samples.push_back(std::move(day.metrics.samples[i]));
        }
    }
    return out;
}

void write_synth_artifacts(const fs::path& dir, const SynthData& data) {
    {
        std::ofstream out = open_output(dir / "metrics.csv");
        write_metric_csv(out, data.metrics);
    }
    std::ofstream out = open_output(dir / "truth.csv");
    out << "DateTime,true_demand\n";
    char buf[40];
    for (const auto& [ts, demand] : data.truth) {
        std::snprintf(buf, sizeof buf, "%.17g", demand);
        out << format_timestamp(ts) << ',' << buf << '\n';
    }
}

// ---------------------------------------------------------------------------
// per-subcommand option payloads

struct SynthOpts {
    RunConfig cfg;
    int days = 1;
    int weeks = 0;  // when set, overrides days
    std::string coeffs_text;
    std::string out = ".";
};

struct IngestOpts {
    std::string input;
    std::string out = ".";
    int window_minutes = 15;
    std::string time_col = "DateTime";
    std::string util_col = "U";
    std::string regressors_text;
};

struct DemandOpts {
    std::string input;
    std::string out = ".";
    double threshold = kDefaultSaturationThreshold;
    std::string start_date;
    std::string time_col = "DateTime";
    std::string util_col = "U";
    std::string regressors_text;
};

struct TrendOpts {
    std::string peaks_path;
    std::string out = ".";
    bool pin_u0 = false;
    int horizon = 26;
};

struct ScaleOpts {
    double sigma = 0.030;
    double lambda = 0.002;
    std::string p_text = "52,64";
    std::string clocks_text = "333/4,400/8";
    int calib_p = 52;
    double x_low = 0.0;   // calibration tpm, first clock variant
    double x_high = 0.0;  // calibration tpm, second clock variant
    bool has_x_low = false;
    bool has_x_high = false;
    std::string vendor_cells;  // "a,b;c,d" rows of tpm
    std::string out = ".";
};

struct ScenarioOpts {
    std::string growth_path;
    std::string name = "scenario";
    double delta = 0.0;
    std::string thresholds_text = "100,200";
    int horizon = 26;
    std::string out = ".";
};

struct PipelineOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
};

// ---------------------------------------------------------------------------

ColumnMapping mapping_from(const std::string& time_col, const std::string& util_col,
                           const std::string& regressors_text) {
    ColumnMapping mapping;
    mapping.timestamp_column = time_col;
    mapping.utilization_column = util_col;
    mapping.regressor_columns = split_list(regressors_text);
    return mapping;
}

MetricSeries load_series(const std::string& path, const ColumnMapping& mapping) {
    std::ifstream in(path);
    if (!in) throw error("cannot open input '" + path + "'");
    return parse_metric_csv(in, mapping);
}

int run_synth(const SynthOpts& opts) {
    RunConfig cfg = opts.cfg;
    if (!opts.coeffs_text.empty())
        cfg.coefficients = parse_double_list(opts.coeffs_text, "coefficient");
    const int days = opts.weeks > 0 ? opts.weeks * 7 : opts.days;
    fs::create_directories(opts.out);
    SynthData data = synthesize_days(cfg, days);
    write_synth_artifacts(opts.out, data);
    std::cout << "synth: wrote " << data.metrics.samples.size() << " samples over " << days
              << " day(s) to " << opts.out << "\n";
    return 0;
}

int run_ingest(const IngestOpts& opts) {
    MetricSeries series =
        load_series(opts.input, mapping_from(opts.time_col, opts.util_col, opts.regressors_text));
    const ValidationReport report = validate_series(series);
    MetricSeries aggregated = aggregate_window(series, opts.window_minutes);

    fs::create_directories(opts.out);
    {
        std::ofstream out = open_output(fs::path(opts.out) / "aggregated.csv");
        write_metric_csv(out, aggregated);
    }
    json j;
    j["rows"] = series.samples.size();
    j["aggregated_rows"] = aggregated.samples.size();
    j["sample_interval_minutes"] = series.sample_interval;
    j["window_minutes"] = opts.window_minutes;
    j["gap_count"] = report.gap_count;
    j["out_of_range_count"] = report.out_of_range_count;
    j["duplicate_timestamp_count"] = report.duplicate_timestamp_count;
    j["clean"] = report.clean();
    write_json(fs::path(opts.out) / "validation.json", j);
    std::cout << "ingest: " << series.samples.size() << " rows -> " << aggregated.samples.size()
              << " aggregated rows" << (report.clean() ? "" : " (validation findings; see validation.json)")
              << "\n";
    return 0;
}

int run_demand(const DemandOpts& opts) {
    MetricSeries series =
        load_series(opts.input, mapping_from(opts.time_col, opts.util_col, opts.regressors_text));
    const DemandModel model = fit_demand_model(series, opts.threshold);
    const DemandSeries demand = effective_demand_series(model, series);
    const minute_t start = opts.start_date.empty()
                               ? midnight_of(series.samples.front().timestamp)
                               : parse_date_or_throw(opts.start_date);
    const std::vector<WeeklyPeak> peaks = weekly_peaks(demand.points, start);

    fs::create_directories(opts.out);
    {
        std::ofstream out = open_output(fs::path(opts.out) / "demand.csv");
        write_demand_csv(out, demand);
    }
    {
        std::ofstream out = open_output(fs::path(opts.out) / "peaks.csv");
        write_peaks_csv(out, peaks);
    }
    write_json(fs::path(opts.out) / "demand.json", demand_report_json(model, demand));
    std::cout << "demand: fit on " << model.training_rows << " rows (" << model.excluded_rows
              << " saturated excluded), r2 = " << model.fit.r_squared << ", " << peaks.size()
              << " weekly peak(s)\n";
    return 0;
}

GrowthModel fit_growth(const std::vector<WeeklyPeak>& peaks, bool pin_u0) {
    return fit_exponential(peaks, pin_u0 ? GrowthFitMode::pinned_intercept
                                         : GrowthFitMode::two_parameter);
}

json growth_json_with_range(const GrowthModel& model) {
    json j = growth_report_json(model);
    j["week_min"] = model.week_min;
    j["week_max"] = model.week_max;
    return j;
}

int run_trend(const TrendOpts& opts) {
    std::ifstream in(opts.peaks_path);
    if (!in) throw error("cannot open peaks file '" + opts.peaks_path + "'");
    const std::vector<WeeklyPeak> peaks = read_peaks_csv(in);
    const GrowthModel model = fit_growth(peaks, opts.pin_u0);

    fs::create_directories(opts.out);
    write_json(fs::path(opts.out) / "growth.json", growth_json_with_range(model));
    {
        std::ofstream out = open_output(fs::path(opts.out) / "projection.csv");
        write_projection_csv(out, model, opts.horizon);
    }
    std::cout << "trend: U0 = " << model.u0 << ", b = " << model.rate;
    if (model.rate > 0.0)
        std::cout << ", doubling in " << doubling_period(model).weeks << " weeks";
    std::cout << "\n";
    return 0;
}

ScalingTable scale_table_from(const ScaleOpts& opts) {
    const std::vector<int> cpus = parse_int_list(opts.p_text, "CPU count");
    const std::vector<std::string> clocks = split_list(opts.clocks_text);
    if (cpus.empty()) throw usage_error("scale: --p needs at least one CPU count");

    std::vector<CpuConfig> configs;
    for (int p : cpus) configs.push_back({p, 0.0, 0.0});

    if (!opts.vendor_cells.empty()) {
        std::vector<std::vector<double>> cells;
        std::stringstream ss(opts.vendor_cells);
        std::string row;
        while (std::getline(ss, row, ';'))
            cells.push_back(parse_double_list(row, "vendor cell"));
        return vendor_scaling_table(clocks, configs, cells);
    }

    if (!opts.has_x_low)
        throw usage_error("scale: provide either --vendor-cells or calibration throughputs "
                          "(--x52, optionally --x52-hi)");
    std::vector<ScalingModel> models;
    models.push_back({opts.sigma, opts.lambda,
                      calibrate_single_cpu(opts.x_low, opts.calib_p, opts.sigma, opts.lambda),
                      clocks.empty() ? "base" : clocks[0]});
    if (opts.has_x_high) {
        if (clocks.size() < 2)
            throw usage_error("scale: --x52-hi given but --clocks names fewer than two variants");
        models.push_back({opts.sigma, opts.lambda,
                          calibrate_single_cpu(opts.x_high, opts.calib_p, opts.sigma, opts.lambda),
                          clocks[1]});
    }
    return build_scaling_table(models, configs);
}

int run_scale(const ScaleOpts& opts) {
    const ScalingTable table = scale_table_from(opts);
    fs::create_directories(opts.out);
    {
        std::ofstream out = open_output(fs::path(opts.out) / "scaling_table.csv");
        write_scaling_table_csv(out, table);
    }
    write_json(fs::path(opts.out) / "scaling_table.json", scaling_table_json(table));
    std::cout << "scale: " << table.cpu_counts.size() << " config(s) x " << table.clock_labels.size()
              << " clock variant(s)";
    if (table.has_combined) std::cout << ", combined headroom " << table.combined_pct;
    std::cout << "\n";
    return 0;
}

GrowthModel read_growth_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open growth model '" + path + "'");
    json j = json::parse(in);
    GrowthModel model;
    model.u0 = j.at("U0").get<double>();
    model.rate = j.at("b").get<double>();
    model.r2_log = j.value("r2_log", 0.0);
    model.fit_weeks = j.value("fit_weeks", std::size_t{0});
    model.week_min = j.value("week_min", 0.0);
    model.week_max = j.value("week_max", 0.0);
    return model;
}

void write_scenario_artifacts(const fs::path& dir, const ScenarioReport& report) {
    const std::string stem = "scenario_" + sanitized(report.name);
    {
        std::ofstream out = open_output(dir / (stem + ".csv"));
        write_scenario_csv(out, report);
    }
    write_json(dir / (stem + ".json"), scenario_report_json(report));
}

int run_scenario_cmd(const ScenarioOpts& opts) {
    const GrowthModel growth = read_growth_json(opts.growth_path);
    UpgradeScenario scenario;
    scenario.name = opts.name;
    scenario.growth = growth;
    scenario.delta = opts.delta;
    scenario.thresholds = parse_double_list(opts.thresholds_text, "threshold");
    const ScenarioReport report = run_scenario(scenario, opts.horizon);
    fs::create_directories(opts.out);
    write_scenario_artifacts(opts.out, report);
    std::cout << "scenario '" << report.name << "': delta = " << report.delta << "\n";
    return 0;
}

int run_pipeline(const PipelineOpts& opts) {
    std::string config_path = opts.config_path;
    if (config_path.empty()) {
        if (const char* env = std::getenv(kConfigEnvVar)) config_path = env;
    }
    if (config_path.empty())
        throw usage_error(std::string("pipeline: no config given (use --config or ") +
                          kConfigEnvVar + ")");

    RunConfig cfg = run_config_from(load_config_file(config_path));
    if (opts.seed_set) cfg.seed = opts.seed;
    if (!opts.out.empty()) cfg.out_dir = opts.out;

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    // 1. synthetic traffic (or a user-provided metric file)
    MetricSeries raw;
    if (cfg.input_path.empty()) {
        SynthData data = synthesize_days(cfg, cfg.weeks * 7);
        write_synth_artifacts(dir, data);
        std::ifstream in(dir / "metrics.csv");
        raw = parse_metric_csv(in, cfg.mapping);
    } else {
        raw = load_series(cfg.input_path, cfg.mapping);
    }

    // 2. ingest: validate, aggregate
    const ValidationReport validation = validate_series(raw);
    MetricSeries series = aggregate_window(raw, cfg.window_minutes);
    {
        std::ofstream out = open_output(dir / "aggregated.csv");
        write_metric_csv(out, series);
    }
    {
        json j;
        j["rows"] = raw.samples.size();
        j["aggregated_rows"] = series.samples.size();
        j["gap_count"] = validation.gap_count;
        j["out_of_range_count"] = validation.out_of_range_count;
        j["duplicate_timestamp_count"] = validation.duplicate_timestamp_count;
        j["clean"] = validation.clean();
        write_json(dir / "validation.json", j);
    }

    // 3. effective demand and weekly peaks
    const DemandModel model = fit_demand_model(series, cfg.saturation_threshold);
    const DemandSeries demand = effective_demand_series(model, series);
    const minute_t start = parse_date_or_throw(cfg.start_date);
    const std::vector<WeeklyPeak> peaks = weekly_peaks(demand.points, start);
    {
        std::ofstream out = open_output(dir / "demand.csv");
        write_demand_csv(out, demand);
    }
    {
        std::ofstream out = open_output(dir / "peaks.csv");
        write_peaks_csv(out, peaks);
    }
    write_json(dir / "demand.json", demand_report_json(model, demand));

    // 4. long-term growth
    const GrowthModel growth = fit_growth(peaks, cfg.pin_u0);
    write_json(dir / "growth.json", growth_json_with_range(growth));
    {
        std::ofstream out = open_output(dir / "projection.csv");
        write_projection_csv(out, growth, cfg.horizon_weeks);
    }

    // 5. scaling table from calibrated models
    std::optional<ScalingTable> table;
    if (!cfg.calibrations.empty()) {
        std::vector<ScalingModel> models;
        for (const auto& cal : cfg.calibrations)
            models.push_back({cfg.sigma, cfg.lambda,
                              calibrate_single_cpu(cal.tpm, cal.at_cpus, cfg.sigma, cfg.lambda),
                              cal.label});
        std::vector<CpuConfig> configs;
        for (int p : cfg.cpu_counts) configs.push_back({p, 0.0, 0.0});
        table = build_scaling_table(models, configs);
        {
            std::ofstream out = open_output(dir / "scaling_table.csv");
            write_scaling_table_csv(out, *table);
        }
        write_json(dir / "scaling_table.json", scaling_table_json(*table));
    }

    // 6. upgrade scenarios
    for (const ScenarioSpec& spec : cfg.scenarios) {
        UpgradeScenario scenario;
        scenario.name = spec.name;
        scenario.growth = growth;
        scenario.thresholds = cfg.thresholds;
        if (spec.has_delta) {
            scenario.delta = spec.delta;
        } else {
            if (!table)
                throw domain_error("scenario '" + spec.name +
                                   "' needs the scaling table but no calibrations are configured");
            scenario.delta = clock_delta_from_table(*table, spec.base_cpus, spec.base_clock,
                                                    spec.target_cpus, spec.target_clock);
        }
        write_scenario_artifacts(dir, run_scenario(scenario, cfg.horizon_weeks));
    }

    std::cout << "pipeline: U0 = " << growth.u0 << ", b = " << growth.rate;
    if (growth.rate > 0.0)
        std::cout << ", doubling in " << doubling_period(growth).weeks << " weeks";
    std::cout << "; artifacts in " << cfg.out_dir << "\n";
    return 0;
}

}  // namespace

RunConfig run_config_from(const ConfigTable& root) {
    RunConfig cfg;
    cfg.out_dir = root.str("out", cfg.out_dir);
    cfg.seed = std::uint64_t(root.integer("seed", std::int64_t(cfg.seed)));

    if (const ConfigTable* synth = root.table("synth")) {
        cfg.weeks = int(synth->integer("weeks", cfg.weeks));
        cfg.base_scale = synth->number("base_scale", cfg.base_scale);
        cfg.weekly_growth = synth->number("weekly_growth", cfg.weekly_growth);
        cfg.noise = synth->number("noise", cfg.noise);
        cfg.regressor_noise = synth->number("regressor_noise", cfg.regressor_noise);
        if (synth->has("coefficients")) cfg.coefficients = synth->number_list("coefficients");
        cfg.bin_minutes = int(synth->integer("bin_minutes", cfg.bin_minutes));
        cfg.shape.peak_hour = synth->number("peak_hour", cfg.shape.peak_hour);
        cfg.shape.width = synth->number("width", cfg.shape.width);
        cfg.shape.hump_height = synth->number("hump_height", cfg.shape.hump_height);
        cfg.shape.hump_hour = synth->number("hump_hour", cfg.shape.hump_hour);
        cfg.shape.hump_width = synth->number("hump_width", cfg.shape.hump_width);
        cfg.shift_hours = synth->number("shift_hours", cfg.shift_hours);
        cfg.east_weight = synth->number("east_weight", cfg.east_weight);
        cfg.start_date = synth->str("start_date", cfg.start_date);
    }
    if (const ConfigTable* ingest = root.table("ingest")) {
        cfg.input_path = ingest->str("input", cfg.input_path);
        cfg.window_minutes = int(ingest->integer("window_minutes", cfg.window_minutes));
        cfg.mapping.timestamp_column = ingest->str("time_column", cfg.mapping.timestamp_column);
        cfg.mapping.utilization_column = ingest->str("util_column", cfg.mapping.utilization_column);
        cfg.mapping.regressor_columns = ingest->string_list("regressor_columns");
    }
    if (const ConfigTable* demand = root.table("demand"))
        cfg.saturation_threshold = demand->number("threshold", cfg.saturation_threshold);
    if (const ConfigTable* growth = root.table("growth")) {
        cfg.pin_u0 = growth->boolean("pin_u0", cfg.pin_u0);
        cfg.horizon_weeks = int(growth->integer("horizon_weeks", cfg.horizon_weeks));
    }
    if (const ConfigTable* scaling = root.table("scaling")) {
        cfg.sigma = scaling->number("sigma", cfg.sigma);
        cfg.lambda = scaling->number("lambda", cfg.lambda);
        if (scaling->has("cpu_counts")) {
            cfg.cpu_counts.clear();
            for (double p : scaling->number_list("cpu_counts")) cfg.cpu_counts.push_back(int(p));
        }
        if (const auto* cals = scaling->array("calibration")) {
            for (const ConfigTable& cal : *cals) {
                RunConfig::ClockCalibration c;
                c.label = cal.str("label", "");
                c.tpm = cal.number("tpm", 0.0);
                c.at_cpus = int(cal.integer("at_cpus", 1));
                if (c.label.empty() || !(c.tpm > 0.0))
                    throw config_error("scaling.calibration entries need a label and a positive tpm");
                cfg.calibrations.push_back(c);
            }
        }
    }
    if (cfg.sigma < 0.0 || cfg.lambda < 0.0)
        throw config_error("sigma and lambda must be non-negative");

    if (const ConfigTable* scenarios = root.table("scenarios")) {
        if (scenarios->has("thresholds")) cfg.thresholds = scenarios->number_list("thresholds");
        cfg.horizon_weeks = int(scenarios->integer("horizon_weeks", cfg.horizon_weeks));
        if (const auto* cases = scenarios->array("case")) {
            for (const ConfigTable& entry : *cases) {
                ScenarioSpec spec;
                spec.name = entry.str("name", "scenario");
                if (entry.has("delta")) {
                    spec.has_delta = true;
                    spec.delta = entry.number("delta", 0.0);
                } else {
                    const std::string base = entry.str("base", "");
                    const std::string target = entry.str("target", "");
                    if (base.empty() || target.empty())
                        throw config_error("scenario '" + spec.name +
                                           "' needs either delta or base/target cells");
                    parse_cell_ref(base, spec.base_cpus, spec.base_clock);
                    parse_cell_ref(target, spec.target_cpus, spec.target_clock);
                }
                cfg.scenarios.push_back(spec);
            }
        }
    }

    if (!cfg.input_path.empty() && !fs::exists(cfg.input_path))
        throw config_error("input file '" + cfg.input_path + "' does not exist");
    return cfg;
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"capplan: server capacity planning from sampled metrics"};
    app.require_subcommand(1);

    SynthOpts synth_opts;
    auto* synth = app.add_subcommand("synth", "generate synthetic metric days with known demand");
    synth->add_option("--out", synth_opts.out, "output directory");
    synth->add_option("--days", synth_opts.days, "number of days to generate");
    synth->add_option("--weeks", synth_opts.weeks, "number of weeks (overrides --days)");
    synth->add_option("--scale", synth_opts.cfg.base_scale, "peak true demand, percent");
    synth->add_option("--weekly-growth", synth_opts.cfg.weekly_growth,
                      "exponential growth rate per week");
    synth->add_option("--noise", synth_opts.cfg.noise, "utilization noise stddev, points");
    synth->add_option("--reg-noise", synth_opts.cfg.regressor_noise, "regressor noise stddev");
    synth->add_option("--seed", synth_opts.cfg.seed, "RNG seed");
    synth->add_option("--coeffs", synth_opts.coeffs_text, "planted a0,a1,... coefficients");
    synth->add_option("--bin-minutes", synth_opts.cfg.bin_minutes, "sample bin width");
    synth->add_option("--peak-hour", synth_opts.cfg.shape.peak_hour, "component peak, UTC hour");
    synth->add_option("--width", synth_opts.cfg.shape.width, "peak concentration");
    synth->add_option("--hump-height", synth_opts.cfg.shape.hump_height,
                      "secondary hump height, 0 disables");
    synth->add_option("--hump-hour", synth_opts.cfg.shape.hump_hour, "secondary hump, UTC hour");
    synth->add_option("--hump-width", synth_opts.cfg.shape.hump_width, "hump concentration");
    synth->add_option("--shift-hours", synth_opts.cfg.shift_hours, "coastal phase shift");
    synth->add_option("--east-weight", synth_opts.cfg.east_weight, "east coast weight (0..1)");
    synth->add_option("--start-date", synth_opts.cfg.start_date, "first day, YYYY-MM-DD");

    IngestOpts ingest_opts;
    auto* ingest = app.add_subcommand("ingest", "parse, validate and aggregate a metric CSV");
    ingest->add_option("--input", ingest_opts.input, "metric CSV")->required();
    ingest->add_option("--out", ingest_opts.out, "output directory");
    ingest->add_option("--window-minutes", ingest_opts.window_minutes, "aggregation window");
    ingest->add_option("--time-col", ingest_opts.time_col, "timestamp column name");
    ingest->add_option("--util-col", ingest_opts.util_col, "utilization column name");
    ingest->add_option("--regressors", ingest_opts.regressors_text,
                       "comma list of regressor columns (default: all others)");

    DemandOpts demand_opts;
    auto* demand = app.add_subcommand("demand", "fit the effective-demand model and weekly peaks");
    demand->add_option("--input", demand_opts.input, "metric CSV")->required();
    demand->add_option("--out", demand_opts.out, "output directory");
    demand->add_option("--threshold", demand_opts.threshold, "saturation filter, percent");
    demand->add_option("--start", demand_opts.start_date,
                       "analysis start date (default: first sample's day)");
    demand->add_option("--time-col", demand_opts.time_col, "timestamp column name");
    demand->add_option("--util-col", demand_opts.util_col, "utilization column name");
    demand->add_option("--regressors", demand_opts.regressors_text,
                       "comma list of regressor columns (default: all others)");

    TrendOpts trend_opts;
    auto* trend = app.add_subcommand("trend", "fit exponential growth to weekly peaks");
    trend->add_option("--peaks", trend_opts.peaks_path, "peaks CSV (week,peak_demand)")->required();
    trend->add_option("--out", trend_opts.out, "output directory");
    trend->add_flag("--pin-u0", trend_opts.pin_u0, "pin U0 to the week-0 peak, fit b alone");
    trend->add_option("--horizon", trend_opts.horizon, "projection horizon, weeks");

    ScaleOpts scale_opts;
    auto* scale = app.add_subcommand("scale", "super-serial scaling table for CPU configs");
    scale->add_option("--sigma", scale_opts.sigma, "contention factor");
    scale->add_option("--lambda", scale_opts.lambda, "coherency factor");
    scale->add_option("--p", scale_opts.p_text, "comma list of CPU counts");
    scale->add_option("--clocks", scale_opts.clocks_text, "comma list of clock variant labels");
    scale->add_option("--calib-p", scale_opts.calib_p, "CPU count of the calibration cells");
    scale->add_option("--x52", scale_opts.x_low, "measured tpm at the calibration CPU count, first clock")
        ->each([&](const std::string&) { scale_opts.has_x_low = true; });
    scale->add_option("--x52-hi", scale_opts.x_high,
                      "measured tpm at the calibration CPU count, second clock")
        ->each([&](const std::string&) { scale_opts.has_x_high = true; });
    scale->add_option("--vendor-cells", scale_opts.vendor_cells,
                      "vendor throughput grid, rows ';', columns ','");
    scale->add_option("--out", scale_opts.out, "output directory");

    ScenarioOpts scenario_opts;
    auto* scenario = app.add_subcommand("scenario", "deflate the growth curve by an upgrade delta");
    scenario->add_option("--growth", scenario_opts.growth_path, "growth.json from trend")->required();
    scenario->add_option("--name", scenario_opts.name, "scenario name");
    scenario->add_option("--delta", scenario_opts.delta, "capacity gain fraction in [0,1)");
    scenario->add_option("--thresholds", scenario_opts.thresholds_text,
                         "comma list of saturation thresholds, percent");
    scenario->add_option("--horizon", scenario_opts.horizon, "report horizon, weeks");
    scenario->add_option("--out", scenario_opts.out, "output directory");

    PipelineOpts pipeline_opts;
    auto* pipeline = app.add_subcommand("pipeline", "run the whole workflow from a config file");
    pipeline->add_option("--config", pipeline_opts.config_path,
                         std::string("config file (or set ") + kConfigEnvVar + ")");
    pipeline->add_option("--seed", pipeline_opts.seed, "override the config seed")
        ->each([&](const std::string&) { pipeline_opts.seed_set = true; });
    pipeline->add_option("--out", pipeline_opts.out, "override the output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (synth->parsed()) return run_synth(synth_opts);
        if (ingest->parsed()) return run_ingest(ingest_opts);
        if (demand->parsed()) return run_demand(demand_opts);
        if (trend->parsed()) return run_trend(trend_opts);
        if (scale->parsed()) return run_scale(scale_opts);
        if (scenario->parsed()) return run_scenario_cmd(scenario_opts);
        if (pipeline->parsed()) return run_pipeline(pipeline_opts);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace capplan
