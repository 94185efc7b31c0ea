#include "capplan/reports.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace capplan {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

json demand_report_json(const DemandModel& model, const DemandSeries& series) {
    json j;
    j["intercept"] = model.fit.intercept;
    json coef = json::object();
    for (std::size_t i = 0; i < model.regressor_names.size(); ++i)
        coef[model.regressor_names[i]] = model.fit.coefficients[i];
    j["coefficients"] = coef;
    j["r_squared"] = model.fit.r_squared;
    j["saturation_threshold"] = model.saturation_threshold;
    j["training_rows"] = model.training_rows;
    j["excluded_rows"] = model.excluded_rows;
    j["points"] = series.points.size();
    j["negative_predictions_clamped"] = series.clamped_negative;
    return j;
}

void write_demand_csv(std::ostream& out, const DemandSeries& series) {
    out << "DateTime,U,U_star\n";
    for (const DemandPoint& p : series.points)
        out << format_timestamp(p.timestamp) << ',' << fixed(p.measured, 4) << ','
            << fixed(p.effective, 4) << '\n';
}

void write_peaks_csv(std::ostream& out, const std::vector<WeeklyPeak>& peaks) {
    out << "week,peak_demand\n";
    for (const WeeklyPeak& p : peaks) out << p.week << ',' << full(p.peak_demand) << '\n';
}

std::vector<WeeklyPeak> read_peaks_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw csv_error(csv_error::kind::empty_input, "peaks file is empty");
    std::vector<WeeklyPeak> peaks;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        WeeklyPeak p;
        if (std::sscanf(line.c_str(), "%d,%lf", &p.week, &p.peak_demand) != 2)
            throw csv_error(csv_error::kind::bad_row,
                            "line " + std::to_string(line_no) + ": expected week,peak_demand",
                            line_no);
        peaks.push_back(p);
    }
    if (peaks.empty()) throw csv_error(csv_error::kind::empty_input, "peaks file has no rows");
    return peaks;
}

json growth_report_json(const GrowthModel& model) {
    json j;
    j["U0"] = model.u0;
    j["b"] = model.rate;
    if (model.rate > 0.0) {
        const DoublingPeriod d = doubling_period(model);
        j["doubling_weeks"] = d.weeks;
        j["doubling_months_4wk"] = d.months_4wk;
        j["doubling_months_calendar"] = d.months_calendar;
    } else {
        j["doubling_weeks"] = nullptr;
        j["doubling_months_4wk"] = nullptr;
        j["doubling_months_calendar"] = nullptr;
    }
    j["r2_log"] = model.r2_log;
    j["fit_weeks"] = model.fit_weeks;
    return j;
}

void write_projection_csv(std::ostream& out, const GrowthModel& model, int horizon_weeks) {
    out << "week,projected_percent\n";
    for (int w = 0; w <= horizon_weeks; ++w)
        out << w << ',' << fixed(project(model, double(w)), 4) << '\n';
}

json scaling_table_json(const ScalingTable& table) {
    json j;
    j["clock_labels"] = table.clock_labels;
    json rows = json::array();
    for (std::size_t i = 0; i < table.cpu_counts.size(); ++i) {
        json row;
        row["cpus"] = table.cpu_counts[i];
        row["tpm"] = table.cells[i];
        if (!table.clk_delta.empty()) {
            row["clk_delta"] = table.clk_delta[i];
            row["clk_delta_pct"] = table.clk_delta_pct[i];
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    if (!table.cpu_delta.empty()) {
        j["cpu_delta"] = table.cpu_delta;
        j["cpu_delta_pct"] = table.cpu_delta_pct;
    }
    if (table.has_combined) {
        j["combined_delta"] = table.combined_delta;
        j["combined_pct"] = table.combined_pct;
    }
    return j;
}

void write_scaling_table_csv(std::ostream& out, const ScalingTable& table) {
    out << "System";
    for (const std::string& label : table.clock_labels) out << ',' << label;
    if (!table.clk_delta.empty()) out << ",Delta CLK,Percentage";
    out << '\n';

    for (std::size_t i = 0; i < table.cpu_counts.size(); ++i) {
        out << table.cpu_counts[i] << "-way";
        for (double cell : table.cells[i]) out << ',' << fixed(cell, 2);
        if (!table.clk_delta.empty())
            out << ',' << fixed(table.clk_delta[i], 2) << ',' << fixed(table.clk_delta_pct[i], 2);
        out << '\n';
    }
    if (!table.cpu_delta.empty()) {
        out << "Delta CPU";
        for (double d : table.cpu_delta) out << ',' << fixed(d, 2);
        if (table.has_combined) out << ',' << fixed(table.combined_delta, 2) << ',';
        out << '\n';
        out << "Percentage";
        for (double d : table.cpu_delta_pct) out << ',' << fixed(d, 2);
        if (table.has_combined) out << ",," << fixed(table.combined_pct, 2);
        out << '\n';
    }
}

json scenario_report_json(const ScenarioReport& report) {
    json j;
    j["name"] = report.name;
    j["delta"] = report.delta;
    json crossings = json::array();
    for (const ThresholdCrossing& c : report.crossings) {
        json cj;
        cj["threshold"] = c.threshold;
        if (c.saturates) {
            cj["week"] = c.week;
            cj["already_past"] = c.already_past;
        } else {
            cj["week"] = nullptr;
            cj["never_saturates"] = true;
        }
        crossings.push_back(cj);
    }
    j["crossings"] = crossings;
    if (report.has_doubling) {
        j["doubling_weeks"] = report.doubling.weeks;
        j["doubling_months_4wk"] = report.doubling.months_4wk;
    } else {
        j["doubling_weeks"] = nullptr;
        j["doubling_months_4wk"] = nullptr;
    }
    j["horizon_weeks"] = report.weeks.empty() ? 0 : report.weeks.back();
    return j;
}

void write_scenario_csv(std::ostream& out, const ScenarioReport& report) {
    out << "week,baseline_pct,deflated_pct,extrapolated\n";
    for (std::size_t i = 0; i < report.weeks.size(); ++i)
        out << report.weeks[i] << ',' << fixed(report.baseline[i], 4) << ','
            << fixed(report.deflated[i], 4) << ',' << (report.extrapolated[i] ? 1 : 0) << '\n';
}

}  // namespace capplan
