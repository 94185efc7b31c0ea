#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capplan/growth.hpp"
#include "capplan/scaling.hpp"

namespace capplan {

// One upgrade what-if: the growth curve deflated by the capacity gained.
struct UpgradeScenario {
    std::string name;
    GrowthModel growth;
    double delta = 0.0;  // fractional capacity gain vs baseline, in [0, 1)
    std::vector<double> thresholds{100.0, 200.0};  // percent of one server
};

// U0 * e^(b*w) * (1 - delta). A delta of zero is the do-nothing baseline.
double deflate_curve(const GrowthModel& growth, double delta, double week);

// Week at which the deflated curve reaches the threshold:
// w = ln(threshold / (U0 * (1 - delta))) / b. Negative means the threshold
// was crossed before week 0 and is returned as-is. nullopt when b <= 0:
// flat or shrinking demand never saturates.
std::optional<double> saturation_week(const GrowthModel& growth, double delta,
                                      double threshold);

struct ThresholdCrossing {
    double threshold = 0.0;
    bool saturates = false;
    double week = 0.0;        // meaningful only when saturates
    bool already_past = false;  // crossing week is negative
};

struct ScenarioReport {
    std::string name;
    double delta = 0.0;
    std::vector<int> weeks;             // 0..horizon
    std::vector<double> baseline;       // undeflated projection per week
    std::vector<double> deflated;       // baseline * (1 - delta)
    std::vector<bool> extrapolated;     // week outside the fitted range
    std::vector<ThresholdCrossing> crossings;
    bool has_doubling = false;
    DoublingPeriod doubling;            // delta-invariant: deflation rescales U0 only
};

ScenarioReport run_scenario(const UpgradeScenario& scenario, int horizon_weeks);

// Reads base and target cells out of a scaling table and returns the
// headroom delta between them.
double clock_delta_from_table(const ScalingTable& table, int base_cpus,
                              const std::string& base_clock, int target_cpus,
                              const std::string& target_clock);

}  // namespace capplan
