#include "capplan/demand.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace capplan {

FilterResult filter_saturated(const MetricSeries& series, double threshold) {
    if (!(threshold > 0.0) || threshold > 100.0)
        throw domain_error("saturation threshold must be in (0, 100]");

    FilterResult result;
    result.retained.regressor_names = series.regressor_names;
    result.retained.sample_interval = series.sample_interval;
    for (const MetricSample& s : series.samples) {
        if (s.utilization < threshold)
            result.retained.samples.push_back(s);
        else
            result.excluded += 1;
    }
    if (result.retained.samples.empty())
        throw fully_saturated_error("every row is at or above " + std::to_string(threshold) +
                                    "% utilization; no trainable data");
    return result;
}

DemandModel fit_demand_model(const MetricSeries& series, double threshold) {
    FilterResult filtered = filter_saturated(series, threshold);
    const MetricSeries& train = filtered.retained;
    const std::size_t n = train.samples.size();
    const std::size_t k = train.regressor_names.size();

    DesignMatrix data(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        data.response[i] = train.samples[i].utilization;
        for (std::size_t j = 0; j < k; ++j) data.x(i, j) = train.samples[i].regressors[j];
    }

    DemandModel model;
    model.fit = fit_ols(data);
    model.saturation_threshold = threshold;
    model.training_rows = n;
    model.excluded_rows = filtered.excluded;
    model.regressor_names = train.regressor_names;
    return model;
}

DemandSeries effective_demand_series(const DemandModel& model, const MetricSeries& series) {
    const std::size_t k = model.regressor_names.size();
    if (series.regressor_names.size() != k)
        throw arity_error("series has " + std::to_string(series.regressor_names.size()) +
                          " regressors, model expects " + std::to_string(k));

    // map model column -> series column by name
    std::vector<std::size_t> order(k);
    for (std::size_t j = 0; j < k; ++j) {
        auto it = std::find(series.regressor_names.begin(), series.regressor_names.end(),
                            model.regressor_names[j]);
        if (it == series.regressor_names.end())
            throw arity_error("series is missing regressor '" + model.regressor_names[j] + "'");
        order[j] = std::size_t(it - series.regressor_names.begin());
    }

    DemandSeries out;
    out.points.reserve(series.samples.size());
    std::vector<double> x(k);
    for (const MetricSample& s : series.samples) {
        for (std::size_t j = 0; j < k; ++j) x[j] = s.regressors[order[j]];
        double ustar = predict(model.fit, x);
        if (ustar < 0.0) {
            ustar = 0.0;
            out.clamped_negative += 1;
        }
        out.points.push_back({s.timestamp, s.utilization, ustar});
    }
    return out;
}

std::vector<WeeklyPeak> weekly_peaks(const std::vector<DemandPoint>& points,
                                     minute_t analysis_start) {
    if (points.empty()) throw domain_error("no demand points to summarize");

    std::map<int, double> peaks;
    for (const DemandPoint& p : points) {
        if (p.timestamp < analysis_start)
            throw domain_error("demand point at " + format_timestamp(p.timestamp) +
                               " precedes the analysis start date");
        const int week = int((p.timestamp - analysis_start) / kMinutesPerWeek);
        auto [it, inserted] = peaks.emplace(week, p.effective);
        if (!inserted) it->second = std::max(it->second, p.effective);
    }

    std::vector<WeeklyPeak> out;
    out.reserve(peaks.size());
    for (const auto& [week, peak] : peaks) out.push_back({week, peak});
    return out;
}

}  // namespace capplan
