#include "capplan/growth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "capplan/ols.hpp"

namespace capplan {

namespace {
constexpr double kDaysPerCalendarMonth = 30.44;
}

GrowthModel fit_exponential(const std::vector<WeeklyPeak>& peaks, GrowthFitMode mode) {
    std::set<int> weeks;
    for (const WeeklyPeak& p : peaks) {
        if (!(p.peak_demand > 0.0))
            throw log_domain_error("weekly peak at week " + std::to_string(p.week) +
                                   " is not positive; cannot take its logarithm");
        weeks.insert(p.week);
    }
    if (weeks.size() < 2)
        throw underdetermined_error("need peaks from at least 2 distinct weeks, got " +
                                    std::to_string(weeks.size()));

    const std::size_t n = peaks.size();
    GrowthModel model;
    model.fit_weeks = weeks.size();
    model.week_min = double(*weeks.begin());
    model.week_max = double(*weeks.rbegin());

    double mean_log = 0.0;
    for (const WeeklyPeak& p : peaks) mean_log += std::log(p.peak_demand);
    mean_log /= double(n);

    if (mode == GrowthFitMode::two_parameter) {
        DesignMatrix data(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            data.x(i, 0) = double(peaks[i].week);
            data.response[i] = std::log(peaks[i].peak_demand);
        }
        OlsFit fit = fit_ols(data);
        model.u0 = std::exp(fit.intercept);
        model.rate = fit.coefficients[0];
        model.r2_log = fit.r_squared;
        return model;
    }

    // pinned mode: U0 is the week-0 peak, slope fitted through that anchor
    auto w0 = std::find_if(peaks.begin(), peaks.end(),
                           [](const WeeklyPeak& p) { return p.week == 0; });
    if (w0 == peaks.end())
        throw domain_error("pinned fit requires a week-0 peak to anchor U0");
    const double log_u0 = std::log(w0->peak_demand);

    double sww = 0.0, swy = 0.0;
    for (const WeeklyPeak& p : peaks) {
        const double w = double(p.week);
        sww += w * w;
        swy += w * (std::log(p.peak_demand) - log_u0);
    }
    model.u0 = w0->peak_demand;
    model.rate = swy / sww;

    double sse = 0.0, sst = 0.0;
    for (const WeeklyPeak& p : peaks) {
        const double r = std::log(p.peak_demand) - (log_u0 + model.rate * double(p.week));
        sse += r * r;
        sst += (std::log(p.peak_demand) - mean_log) * (std::log(p.peak_demand) - mean_log);
    }
    model.r2_log = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    return model;
}

double project(const GrowthModel& model, double week) {
    return model.u0 * std::exp(model.rate * week);
}

DoublingPeriod doubling_period(const GrowthModel& model) {
    if (!(model.rate > 0.0))
        throw no_doubling_error("growth rate b = " + std::to_string(model.rate) +
                                " is not positive; demand never doubles");
    DoublingPeriod d;
    d.weeks = std::log(2.0) / model.rate;
    d.months_4wk = d.weeks / 4.0;
    d.months_calendar = d.weeks * 7.0 / kDaysPerCalendarMonth;
    return d;
}

}  // namespace capplan
