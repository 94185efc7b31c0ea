#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "capplan/errors.hpp"
#include "capplan/timeparse.hpp"

namespace capplan {

// One sampled observation: measured CPU-busy plus the regressor values
// recorded at the same instant. Measured utilization lives in [0, 100];
// values outside that range are reported by validate_series, not rejected.
struct MetricSample {
    minute_t timestamp = 0;
    double utilization = 0.0;
    std::vector<double> regressors;
};

struct MetricSeries {
    std::vector<MetricSample> samples;        // time-ordered
    std::vector<std::string> regressor_names; // shared by every sample
    minute_t sample_interval = 0;             // minutes; 0 when unknown (<2 samples)

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

// Maps CSV header names onto roles. An empty regressor list means "every
// column that is not the timestamp or utilization, in header order".
struct ColumnMapping {
    std::string timestamp_column = "DateTime";
    std::string utilization_column = "U";
    std::vector<std::string> regressor_columns;
};

class csv_error : public error {
public:
    enum class kind { missing_column, bad_row, empty_input };
    csv_error(kind k, const std::string& what, std::size_t line = 0)
        : error(what), which(k), line(line) {}
    kind which;
    std::size_t line;  // 1-based input line; 0 when not row-specific
};

// Parses one metric CSV. Rows come back sorted by timestamp; the sample
// interval is inferred as the smallest positive gap between consecutive
// rows. Every malformed input raises csv_error with a located message.
MetricSeries parse_metric_csv(std::istream& in, const ColumnMapping& mapping);

// Inverse of parse_metric_csv: header then one row per sample, values at
// full precision so a rewrite/reparse cycle reproduces the series exactly.
void write_metric_csv(std::ostream& out, const MetricSeries& series);

// Arithmetic mean of all samples falling in each [start, start+window)
// slot, windows anchored at midnight UTC. Slots with no samples are
// omitted. Utilization and regressors are averaged alike.
MetricSeries aggregate_window(const MetricSeries& series, minute_t window_minutes);

struct ValidationReport {
    std::size_t gap_count = 0;
    std::size_t out_of_range_count = 0;
    std::size_t duplicate_timestamp_count = 0;
    bool clean() const {
        return gap_count == 0 && out_of_range_count == 0 && duplicate_timestamp_count == 0;
    }
};

ValidationReport validate_series(const MetricSeries& series);

}  // namespace capplan
