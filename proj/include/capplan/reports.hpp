#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "capplan/demand.hpp"
#include "capplan/growth.hpp"
#include "capplan/scaling.hpp"
#include "capplan/scenario.hpp"

namespace capplan {

// All JSON artifacts use ordered_json so key order, and therefore the byte
// stream, is reproducible run to run.
using json = nlohmann::ordered_json;

json demand_report_json(const DemandModel& model, const DemandSeries& series);

// timestamp,U,U_star
void write_demand_csv(std::ostream& out, const DemandSeries& series);

// week,peak_demand at full precision; feeds the trend stage
void write_peaks_csv(std::ostream& out, const std::vector<WeeklyPeak>& peaks);
std::vector<WeeklyPeak> read_peaks_csv(std::istream& in);

json growth_report_json(const GrowthModel& model);

// week,projected_percent
void write_projection_csv(std::ostream& out, const GrowthModel& model, int horizon_weeks);

json scaling_table_json(const ScalingTable& table);

// Mirrors the vendor-table layout: configs down, clock variants across,
// delta column/row, percentage column/row. tpm at 2 decimals, percentages
// at 2 decimals.
void write_scaling_table_csv(std::ostream& out, const ScalingTable& table);

json scenario_report_json(const ScenarioReport& report);

// week,baseline_pct,deflated_pct - plot-ready, one file per scenario
void write_scenario_csv(std::ostream& out, const ScenarioReport& report);

}  // namespace capplan
