#pragma once

#include <cstddef>
#include <vector>

#include "capplan/demand.hpp"

namespace capplan {

// Long-term trend U(w) = U0 * e^(b*w), w in weeks since analysis start.
struct GrowthModel {
    double u0 = 0.0;       // demand at week 0, percent
    double rate = 0.0;     // b, per-week growth rate
    std::size_t fit_weeks = 0;
    double r2_log = 0.0;   // r-squared of the log-space fit
    double week_min = 0.0;
    double week_max = 0.0;

    bool extrapolates(double week) const { return week < week_min || week > week_max; }
};

enum class GrowthFitMode {
    two_parameter,     // log-linear OLS fits both ln(U0) and b
    pinned_intercept,  // U0 pinned to the week-0 peak, b fitted alone
};

// Log-linear fit of ln(peak) on week index. Mirrors a spreadsheet
// exponential trendline; no nonlinear iteration.
GrowthModel fit_exponential(const std::vector<WeeklyPeak>& peaks,
                            GrowthFitMode mode = GrowthFitMode::two_parameter);

double project(const GrowthModel& model, double week);

struct DoublingPeriod {
    double weeks = 0.0;
    double months_4wk = 0.0;       // weeks / 4
    double months_calendar = 0.0;  // weeks * 7 / 30.44
};

// ln(2) / b. Only defined for growing demand; b <= 0 raises
// no_doubling_error.
DoublingPeriod doubling_period(const GrowthModel& model);

}  // namespace capplan
