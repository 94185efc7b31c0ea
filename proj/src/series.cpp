#include "capplan/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace capplan {

namespace {

// Splits one CSV record: comma separator, optional double-quoted fields
// with "" as the embedded-quote escape.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_number(const std::string& text, double& out) {
    std::string t = trimmed(text);
    if (t.empty()) return false;
    const char* begin = t.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + t.size();
}

minute_t infer_interval(const std::vector<MetricSample>& samples) {
    minute_t best = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        minute_t d = samples[i].timestamp - samples[i - 1].timestamp;
        if (d > 0 && (best == 0 || d < best)) best = d;
    }
    return best;
}

}  // namespace

MetricSeries parse_metric_csv(std::istream& in, const ColumnMapping& mapping) {
    std::string line;
    if (!std::getline(in, line))
        throw csv_error(csv_error::kind::empty_input, "input has no header row");

    const std::vector<std::string> header = split_csv_line(line);
    auto column_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trimmed(header[i]) == name) return i;
        throw csv_error(csv_error::kind::missing_column, "column '" + name + "' not found in header");
    };

    const std::size_t time_col = column_index(mapping.timestamp_column);
    const std::size_t util_col = column_index(mapping.utilization_column);

    MetricSeries series;
    std::vector<std::size_t> reg_cols;
    if (mapping.regressor_columns.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i == time_col || i == util_col) continue;
            reg_cols.push_back(i);
            series.regressor_names.push_back(trimmed(header[i]));
        }
    } else {
        for (const std::string& name : mapping.regressor_columns) {
            reg_cols.push_back(column_index(name));
            series.regressor_names.push_back(name);
        }
    }
    if (reg_cols.empty())
        throw csv_error(csv_error::kind::missing_column, "no regressor columns mapped");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        auto field = [&](std::size_t idx) -> const std::string& {
            if (idx >= fields.size())
                throw csv_error(csv_error::kind::bad_row,
                                "line " + std::to_string(line_no) + ": too few fields", line_no);
            return fields[idx];
        };

        MetricSample sample;
        auto ts = parse_timestamp(trimmed(field(time_col)));
        if (!ts)
            throw csv_error(csv_error::kind::bad_row,
                            "line " + std::to_string(line_no) + ": unparseable timestamp '" +
                                trimmed(field(time_col)) + "'",
                            line_no);
        sample.timestamp = *ts;
        if (!parse_number(field(util_col), sample.utilization))
            throw csv_error(csv_error::kind::bad_row,
                            "line " + std::to_string(line_no) + ": non-numeric utilization '" +
                                trimmed(field(util_col)) + "'",
                            line_no);
        sample.regressors.reserve(reg_cols.size());
        for (std::size_t rc : reg_cols) {
            double v = 0.0;
            if (!parse_number(field(rc), v))
                throw csv_error(csv_error::kind::bad_row,
                                "line " + std::to_string(line_no) + ": non-numeric value '" +
                                    trimmed(field(rc)) + "' in column '" + trimmed(header[rc]) + "'",
                                line_no);
            sample.regressors.push_back(v);
        }
        series.samples.push_back(std::move(sample));
    }

    if (series.samples.empty())
        throw csv_error(csv_error::kind::empty_input, "no data rows");

    std::stable_sort(series.samples.begin(), series.samples.end(),
                     [](const MetricSample& a, const MetricSample& b) { return a.timestamp < b.timestamp; });
    series.sample_interval = infer_interval(series.samples);
    return series;
}

void write_metric_csv(std::ostream& out, const MetricSeries& series) {
    out << "DateTime,U";
    for (const std::string& name : series.regressor_names) out << ',' << name;
    out << '\n';
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << ',' << buf;
    };
    for (const MetricSample& s : series.samples) {
        out << format_timestamp(s.timestamp);
        put(s.utilization);
        for (double r : s.regressors) put(r);
        out << '\n';
    }
}

MetricSeries aggregate_window(const MetricSeries& series, minute_t window_minutes) {
    if (window_minutes <= 0)
        throw domain_error("aggregation window must be positive");
    if (series.sample_interval > 0 && window_minutes < series.sample_interval)
        throw domain_error("aggregation window (" + std::to_string(window_minutes) +
                           " min) is smaller than the sample interval (" +
                           std::to_string(series.sample_interval) + " min)");

    const std::size_t k = series.regressor_names.size();
    struct Acc {
        double util = 0.0;
        std::vector<double> regs;
        std::size_t count = 0;
    };
    std::map<minute_t, Acc> windows;
    for (const MetricSample& s : series.samples) {
        minute_t day0 = midnight_of(s.timestamp);
        minute_t start = day0 + ((s.timestamp - day0) / window_minutes) * window_minutes;
        Acc& acc = windows[start];
        if (acc.regs.empty()) acc.regs.assign(k, 0.0);
        acc.util += s.utilization;
        for (std::size_t j = 0; j < k && j < s.regressors.size(); ++j)
            acc.regs[j] += s.regressors[j];
        acc.count += 1;
    }

    MetricSeries out;
    out.regressor_names = series.regressor_names;
    out.sample_interval = window_minutes;
    for (const auto& [start, acc] : windows) {
        MetricSample s;
        s.timestamp = start;
        s.utilization = acc.util / double(acc.count);
        s.regressors.resize(k);
        for (std::size_t j = 0; j < k; ++j) s.regressors[j] = acc.regs[j] / double(acc.count);
        out.samples.push_back(std::move(s));
    }
    return out;
}

ValidationReport validate_series(const MetricSeries& series) {
    ValidationReport report;
    for (const MetricSample& s : series.samples) {
        if (!std::isfinite(s.utilization) || s.utilization < 0.0 || s.utilization > 100.0)
            report.out_of_range_count += 1;
    }
    for (std::size_t i = 1; i < series.samples.size(); ++i) {
        minute_t d = series.samples[i].timestamp - series.samples[i - 1].timestamp;
        if (d == 0) report.duplicate_timestamp_count += 1;
        if (series.sample_interval > 0 && d > series.sample_interval) report.gap_count += 1;
    }
    return report;
}

}  // namespace capplan
