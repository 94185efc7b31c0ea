#include "capplan/scenario.hpp"

#include <cmath>
#include <string>

namespace capplan {

namespace {

void check_delta(double delta) {
    if (!(delta >= 0.0) || delta >= 1.0)
        throw domain_error("delta must lie in [0, 1); got " + std::to_string(delta));
}

}  // namespace

double deflate_curve(const GrowthModel& growth, double delta, double week) {
    check_delta(delta);
    return project(growth, week) * (1.0 - delta);
}

std::optional<double> saturation_week(const GrowthModel& growth, double delta,
                                      double threshold) {
    check_delta(delta);
    if (!(threshold > 0.0)) throw domain_error("threshold must be positive");
    if (!(growth.u0 > 0.0)) throw domain_error("growth model has non-positive U0");
    if (!(growth.rate > 0.0)) return std::nullopt;
    return std::log(threshold / (growth.u0 * (1.0 - delta))) / growth.rate;
}

ScenarioReport run_scenario(const UpgradeScenario& scenario, int horizon_weeks) {
    if (horizon_weeks < 1) throw domain_error("horizon must be at least 1 week");
    check_delta(scenario.delta);

    ScenarioReport report;
    report.name = scenario.name;
    report.delta = scenario.delta;
    report.weeks.reserve(horizon_weeks + 1);
    for (int w = 0; w <= horizon_weeks; ++w) {
        report.weeks.push_back(w);
        const double base = project(scenario.growth, double(w));
        report.baseline.push_back(base);
        report.deflated.push_back(base * (1.0 - scenario.delta));
        report.extrapolated.push_back(scenario.growth.extrapolates(double(w)));
    }
    for (double threshold : scenario.thresholds) {
        ThresholdCrossing crossing;
        crossing.threshold = threshold;
        if (auto week = saturation_week(scenario.growth, scenario.delta, threshold)) {
            crossing.saturates = true;
            crossing.week = *week;
            crossing.already_past = *week < 0.0;
        }
        report.crossings.push_back(crossing);
    }
    if (scenario.growth.rate > 0.0) {
        report.has_doubling = true;
        report.doubling = doubling_period(scenario.growth);
    }
    return report;
}

double clock_delta_from_table(const ScalingTable& table, int base_cpus,
                              const std::string& base_clock, int target_cpus,
                              const std::string& target_clock) {
    const double base = table.cell(base_cpus, base_clock);
    const double target = table.cell(target_cpus, target_clock);
    return headroom_delta(base, target);
}

}  // namespace capplan
