#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "capplan/series.hpp"
#include "capplan/timeparse.hpp"

namespace capplan {

// Traffic intensity per time-of-day bin, percent of the profile's own peak.
struct TrafficProfile {
    std::vector<double> values;  // one per bin, [0, 100] for a component
    int bin_minutes = 15;

    std::size_t bins() const { return values.size(); }
    // wrapped linear interpolation at an hour-of-day in [0, 24)
    double value_at(double hour) const;
    std::size_t peak_bin() const;  // earliest bin attaining the max
    double peak_hour() const;
    // rescaled so the maximum is exactly 100
    TrafficProfile normalized() const;
};

// Smooth wrapped daily bump: a primary peak plus an optional secondary
// afternoon hump, riding on a baseline floor so the trough never reaches
// zero. Width is a concentration parameter; larger is narrower.
struct ProfileShape {
    double peak_hour = 4.0;
    double width = 3.0;
    double hump_hour = 16.5;
    double hump_height = 0.0;  // 0..100, relative to the primary peak; 0 disables
    double hump_width = 8.0;
    double floor = 5.0;        // percent of peak the trough retains, [0, 100)
};

TrafficProfile unimodal_profile(const ProfileShape& shape, int bin_minutes = 15);

// Superposition of one component with a phase-shifted copy of itself:
// aggregate(t) = w1*component(t) + w2*component(t + shift), wrapped mod 24h.
TrafficProfile coastal_profile(const TrafficProfile& component, double shift_hours,
                               std::pair<double, double> weights);

// One simulated day with known ground truth. The emitted utilization is the
// capped true demand plus measurement noise, re-clamped to [0, 100]; the
// regressors reproduce the demand exactly through the planted coefficients
// (before any regressor noise), which is what makes this an oracle for the
// demand-fitting pipeline.
struct SimulatedDay {
    std::vector<double> true_demand;           // percent, unbounded
    MetricSeries metrics;                      // clipped U plus regressors
    std::vector<double> planted_coefficients;  // a0, a1..ak
    double noise_stddev = 0.0;
    double regressor_noise_stddev = 0.0;
    std::uint64_t seed = 0;
};

// coefficients = (a0, a1..ak), k >= 1, a1 != 0: the first channel balances
// the identity a0 + sum(ai * Xi(t)) = D(t); channels 2..k carry independent
// deterministic harmonics so the design stays full rank.
SimulatedDay generate_day(const TrafficProfile& profile, double demand_scale,
                          const std::vector<double>& coefficients, double noise_stddev,
                          std::uint64_t seed, minute_t day_start,
                          double regressor_noise_stddev = 0.0);

// Pointwise min(demand, cap): what a saturating server reports.
std::vector<double> simulate_capped_server(const std::vector<double>& demand, double cap);

// Deterministic per-day seed stream (splitmix64 over the base seed), so
// days generated in parallel never share a generator state.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Sidecar ground truth: timestamp,true_demand rows matching the day's bins.
void write_truth_csv(std::ostream& out, const SimulatedDay& day);

}  // namespace capplan
