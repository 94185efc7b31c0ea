#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "capplan/ols.hpp"
#include "capplan/series.hpp"
#include "capplan/timeparse.hpp"

namespace capplan {

// Samples with measured CPU-busy at or above this are excluded from
// regression training: a clipped measurement carries no slope information.
constexpr double kDefaultSaturationThreshold = 95.0;

// Measured utilization is capped at 100; effective demand is not. Values
// above 100 mean the workload wanted more than one server.
struct DemandPoint {
    minute_t timestamp = 0;
    double measured = 0.0;   // U, [0, 100]
    double effective = 0.0;  // U*, >= 0, unbounded above
};

struct DemandModel {
    OlsFit fit;
    double saturation_threshold = kDefaultSaturationThreshold;
    std::size_t training_rows = 0;
    std::size_t excluded_rows = 0;
    std::vector<std::string> regressor_names;
};

struct WeeklyPeak {
    int week = 0;         // 7-day blocks since the analysis start date
    double peak_demand = 0.0;
};

struct FilterResult {
    MetricSeries retained;
    std::size_t excluded = 0;
};

// Keeps exactly the rows with U < threshold, order preserved. Threshold is
// inclusive on the exclusion side: U == threshold is dropped.
FilterResult filter_saturated(const MetricSeries& series, double threshold);

// Filters, then regresses U on the regressors over the retained rows.
DemandModel fit_demand_model(const MetricSeries& series,
                             double threshold = kDefaultSaturationThreshold);

struct DemandSeries {
    std::vector<DemandPoint> points;
    std::size_t clamped_negative = 0;  // predictions below zero pulled up to 0
};

// Predicts U* for every row, saturated ones included - that is the point.
// Series regressors are matched to the model by name, so column order in
// the input does not matter.
DemandSeries effective_demand_series(const DemandModel& model, const MetricSeries& series);

// Max U* per 7-day block from analysis_start; blocks with no points are
// omitted. Points before analysis_start are a caller error.
std::vector<WeeklyPeak> weekly_peaks(const std::vector<DemandPoint>& points,
                                     minute_t analysis_start);

}  // namespace capplan
