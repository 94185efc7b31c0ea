#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "capplan/errors.hpp"

namespace capplan {

// Super-serial capacity law parameters for one clock/cache variant,
// anchored by a calibrated single-CPU throughput.
struct ScalingModel {
    double sigma = 0.0;           // contention factor (locks), >= 0
    double lambda = 0.0;          // coherency factor (cache refetch), >= 0
    double single_cpu_tpm = 0.0;  // X(1), transactions per minute
    std::string clock_label;      // e.g. "333/4" for 333 MHz / 4 MB cache
};

struct CpuConfig {
    int cpu_count = 1;
    double clock_mhz = 0.0;
    double cache_mb = 0.0;

    std::string label() const { return std::to_string(cpu_count) + "-way"; }
};

// C(p) = p / (1 + sigma*(p-1) + sigma*lambda*p*(p-1)).
// C(1) = 1 for any sigma, lambda; sigma = lambda = 0 gives C(p) = p.
double capacity_ratio(double p, double sigma, double lambda);

// X(p) = X(1) * C(p).
double predict_throughput(const ScalingModel& model, double p);

// X(1) = X(p) / C(p): backs out the per-CPU throughput from a measured or
// quoted figure at some CPU count.
double calibrate_single_cpu(double throughput_at_p, double p, double sigma, double lambda);

struct SigmaLambdaFit {
    double sigma = 0.0;
    double lambda = 0.0;
    bool sigma_clamped = false;         // negative estimate pulled up to 0
    bool lambda_clamped = false;
    bool lambda_indeterminate = false;  // sigma == 0, so lambda has no effect
};

// Fits (sigma, lambda) to normalized capacity points (p, c = X(p)/X(1))
// via the linearization p/c - 1 = sigma*(p-1) + (sigma*lambda)*p*(p-1).
SigmaLambdaFit fit_sigma_lambda(const std::vector<std::pair<double, double>>& points);

// Throughput grid over CPU configs (rows) and clock variants (columns),
// with the delta column/row and percentage cells of the familiar vendor
// table layout. Deltas compare last to first clock (per row) and last to
// first config (per column); percentages divide by the cell they grew from.
struct ScalingTable {
    std::vector<std::string> clock_labels;
    std::vector<int> cpu_counts;
    std::vector<std::vector<double>> cells;  // [config][clock], tpm

    std::vector<double> clk_delta;      // per config row; empty when < 2 clocks
    std::vector<double> clk_delta_pct;
    std::vector<double> cpu_delta;      // per clock column; empty when < 2 configs
    std::vector<double> cpu_delta_pct;
    bool has_combined = false;          // both dimensions have a span
    double combined_delta = 0.0;        // corner: last config+clock vs first
    double combined_pct = 0.0;

    double cell(int cpu_count, const std::string& clock_label) const;
};

ScalingTable build_scaling_table(const std::vector<ScalingModel>& model_per_clock,
                                 const std::vector<CpuConfig>& configs);

// Vendor mode: throughput cells are given directly, no model involved.
// cells[i][j] pairs with configs[i] and clock_labels[j].
ScalingTable vendor_scaling_table(const std::vector<std::string>& clock_labels,
                                  const std::vector<CpuConfig>& configs,
                                  const std::vector<std::vector<double>>& cells);

// delta = (upgraded - base) / base, the fractional headroom gained.
double headroom_delta(double base_tpm, double upgraded_tpm);

}  // namespace capplan
