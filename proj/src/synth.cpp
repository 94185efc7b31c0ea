#include "capplan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "capplan/errors.hpp"

namespace capplan {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double wrapped_bump(double hour, double center, double width) {
    return std::exp(width * (std::cos(kTau * (hour - center) / 24.0) - 1.0));
}

}  // namespace

double TrafficProfile::value_at(double hour) const {
    const double bins_per_day = double(values.size());
    double pos = hour / 24.0 * bins_per_day;
    pos = std::fmod(pos, bins_per_day);
    if (pos < 0) pos += bins_per_day;
    const std::size_t lo = std::size_t(pos) % values.size();
    const std::size_t hi = (lo + 1) % values.size();
    const double frac = pos - std::floor(pos);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

std::size_t TrafficProfile::peak_bin() const {
    return std::size_t(std::max_element(values.begin(), values.end()) - values.begin());
}

double TrafficProfile::peak_hour() const {
    return double(peak_bin() * std::size_t(bin_minutes)) / 60.0;
}

TrafficProfile TrafficProfile::normalized() const {
    TrafficProfile out = *this;
    const double max = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    if (max > 0.0)
        for (double& v : out.values) v *= 100.0 / max;
    return out;
}

TrafficProfile unimodal_profile(const ProfileShape& shape, int bin_minutes) {
    if (bin_minutes <= 0 || kMinutesPerDay % bin_minutes != 0)
        throw domain_error("bin width must be a positive divisor of 24h");
    if (shape.width <= 0.0 || shape.hump_width <= 0.0)
        throw domain_error("profile widths must be positive");
    if (shape.hump_height < 0.0 || shape.hump_height > 100.0)
        throw domain_error("hump height must be in [0, 100]");
    if (shape.floor < 0.0 || shape.floor >= 100.0)
        throw domain_error("profile floor must be in [0, 100)");

    TrafficProfile profile;
    profile.bin_minutes = bin_minutes;
    const std::size_t bins = std::size_t(kMinutesPerDay / bin_minutes);
    profile.values.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const double hour = double(i * std::size_t(bin_minutes)) / 60.0;
        double v = 100.0 * wrapped_bump(hour, shape.peak_hour, shape.width);
        if (shape.hump_height > 0.0)
            v += shape.hump_height * wrapped_bump(hour, shape.hump_hour, shape.hump_width);
        profile.values[i] = v;
    }
    profile = profile.normalized();
    for (double& v : profile.values) v = shape.floor + (1.0 - shape.floor / 100.0) * v;
    return profile;
}

TrafficProfile coastal_profile(const TrafficProfile& component, double shift_hours,
                               std::pair<double, double> weights) {
    if (component.values.empty()) throw domain_error("component profile is empty");
    if (std::abs(weights.first + weights.second - 1.0) > 1e-9)
        throw domain_error("coastal weights must sum to 1");

    TrafficProfile aggregate;
    aggregate.bin_minutes = component.bin_minutes;
    aggregate.values.resize(component.values.size());
    for (std::size_t i = 0; i < component.values.size(); ++i) {
        const double hour = double(i * std::size_t(component.bin_minutes)) / 60.0;
        aggregate.values[i] = weights.first * component.values[i] +
                              weights.second * component.value_at(hour + shift_hours);
    }
    return aggregate;
}

SimulatedDay generate_day(const TrafficProfile& profile, double demand_scale,
                          const std::vector<double>& coefficients, double noise_stddev,
                          std::uint64_t seed, minute_t day_start,
                          double regressor_noise_stddev) {
    if (!(demand_scale > 0.0)) throw domain_error("demand scale must be positive");
    if (coefficients.size() < 2)
        throw arity_error("need an intercept and at least one regressor coefficient");
    if (coefficients[1] == 0.0)
        throw domain_error("the first regressor coefficient must be nonzero; "
                           "that channel balances the planted identity");
    if (noise_stddev < 0.0 || regressor_noise_stddev < 0.0)
        throw domain_error("noise levels must be non-negative");
    if (profile.values.empty()) throw domain_error("profile is empty");

    const std::size_t k = coefficients.size() - 1;
    const std::size_t bins = profile.values.size();

    SimulatedDay day;
    day.planted_coefficients = coefficients;
    day.noise_stddev = noise_stddev;
    day.regressor_noise_stddev = regressor_noise_stddev;
    day.seed = seed;
    day.true_demand.resize(bins);
    day.metrics.sample_interval = profile.bin_minutes;
    for (std::size_t j = 0; j < k; ++j)
        day.metrics.regressor_names.push_back("X" + std::to_string(j + 1));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Channel 1 follows the demand curve through the planted identity; the
    // remaining channels fluctuate independently bin to bin so the design
    // stays well conditioned even after the saturation filter drops the
    // peak hours. Their draws come from the same seeded stream.
    const double aux_amp = demand_scale * 0.25;

    day.metrics.samples.reserve(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const double demand = demand_scale * profile.values[i] / 100.0;
        day.true_demand[i] = demand;

        MetricSample sample;
        sample.timestamp = day_start + minute_t(i) * profile.bin_minutes;
        sample.regressors.resize(k);
        double aux_sum = 0.0;
        for (std::size_t j = 1; j < k; ++j) {
            const double value = aux_amp * gauss(rng);
            sample.regressors[j] = value;
            aux_sum += coefficients[j + 1] * value;
        }
        sample.regressors[0] = (demand - coefficients[0] - aux_sum) / coefficients[1];

        double u = std::min(demand, 100.0);
        if (noise_stddev > 0.0) u += noise_stddev * gauss(rng);
        sample.utilization = std::clamp(u, 0.0, 100.0);

        if (regressor_noise_stddev > 0.0)
            for (std::size_t j = 0; j < k; ++j)
                sample.regressors[j] += regressor_noise_stddev * gauss(rng);

        day.metrics.samples.push_back(std::move(sample));
    }
    return day;
}

std::vector<double> simulate_capped_server(const std::vector<double>& demand, double cap) {
    if (!(cap > 0.0)) throw domain_error("capacity cap must be positive");
    std::vector<double> out(demand.size());
    for (std::size_t i = 0; i < demand.size(); ++i) out[i] = std::min(demand[i], cap);
    return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 step over base + index
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void write_truth_csv(std::ostream& out, const SimulatedDay& day) {
    out << "DateTime,true_demand\n";
    char buf[40];
    for (std::size_t i = 0; i < day.true_demand.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", day.true_demand[i]);
        out << format_timestamp(day.metrics.samples[i].timestamp) << ',' << buf << '\n';
    }
}

}  // namespace capplan
