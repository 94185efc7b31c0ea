#include "capplan/scaling.hpp"

#include <cmath>
#include <string>

#include "capplan/ols.hpp"

namespace capplan {

double capacity_ratio(double p, double sigma, double lambda) {
    if (!(p >= 1.0)) throw domain_error("CPU count must be >= 1");
    if (sigma < 0.0 || lambda < 0.0)
        throw domain_error("sigma and lambda must be non-negative");
    return p / (1.0 + sigma * (p - 1.0) + sigma * lambda * p * (p - 1.0));
}

double predict_throughput(const ScalingModel& model, double p) {
    if (!(model.single_cpu_tpm > 0.0))
        throw domain_error("single-CPU throughput must be positive");
    return model.single_cpu_tpm * capacity_ratio(p, model.sigma, model.lambda);
}

double calibrate_single_cpu(double throughput_at_p, double p, double sigma, double lambda) {
    if (!(throughput_at_p > 0.0)) throw domain_error("throughput must be positive");
    return throughput_at_p / capacity_ratio(p, sigma, lambda);
}

SigmaLambdaFit fit_sigma_lambda(const std::vector<std::pair<double, double>>& points) {
    std::size_t informative = 0;
    double first_p = 0.0;
    bool distinct = false;
    for (const auto& [p, c] : points) {
        if (!(p >= 1.0)) throw domain_error("CPU count must be >= 1");
        if (!(c > 0.0)) throw domain_error("normalized capacity must be positive");
        if (p > 1.0) {
            if (informative == 0)
                first_p = p;
            else if (p != first_p)
                distinct = true;
            ++informative;
        }
    }
    if (informative < 2 || !distinct)
        throw underdetermined_error("need capacity points at two distinct CPU counts above 1");

    // y = p/c - 1 against columns (p-1) and p(p-1), no intercept
    const std::size_t n = points.size();
    std::vector<double> a(n * 2), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = points[i].first;
        a[i * 2] = p - 1.0;
        a[i * 2 + 1] = p * (p - 1.0);
        y[i] = p / points[i].second - 1.0;
    }
    std::vector<double> coef = least_squares(n, 2, a, y);

    SigmaLambdaFit fit;
    fit.sigma = coef[0];
    double sigma_lambda = coef[1];
    if (fit.sigma < 0.0) {
        fit.sigma = 0.0;
        fit.sigma_clamped = true;
    }
    if (sigma_lambda < 0.0) {
        sigma_lambda = 0.0;
        fit.lambda_clamped = true;
    }
    if (fit.sigma > 0.0) {
        fit.lambda = sigma_lambda / fit.sigma;
    } else {
        // contention-free: the law reduces to C(p) = p and lambda drops out
        fit.lambda = 0.0;
        fit.lambda_indeterminate = true;
    }
    return fit;
}

namespace {

void fill_deltas(ScalingTable& t) {
    const std::size_t nrows = t.cpu_counts.size();
    const std::size_t ncols = t.clock_labels.size();
    if (ncols >= 2) {
        t.clk_delta.resize(nrows);
        t.clk_delta_pct.resize(nrows);
        for (std::size_t i = 0; i < nrows; ++i) {
            t.clk_delta[i] = t.cells[i][ncols - 1] - t.cells[i][0];
            t.clk_delta_pct[i] = t.clk_delta[i] / t.cells[i][0];
        }
    }
    if (nrows >= 2) {
        t.cpu_delta.resize(ncols);
        t.cpu_delta_pct.resize(ncols);
        for (std::size_t j = 0; j < ncols; ++j) {
            t.cpu_delta[j] = t.cells[nrows - 1][j] - t.cells[0][j];
            t.cpu_delta_pct[j] = t.cpu_delta[j] / t.cells[0][j];
        }
    }
    if (nrows >= 2 && ncols >= 2) {
        t.has_combined = true;
        t.combined_delta = t.cells[nrows - 1][ncols - 1] - t.cells[0][0];
        t.combined_pct = t.combined_delta / t.cells[0][0];
    }
}

}  // namespace

double ScalingTable::cell(int cpu_count, const std::string& clock_label) const {
    for (std::size_t i = 0; i < cpu_counts.size(); ++i) {
        if (cpu_counts[i] != cpu_count) continue;
        for (std::size_t j = 0; j < clock_labels.size(); ++j)
            if (clock_labels[j] == clock_label) return cells[i][j];
    }
    throw lookup_error("no cell for " + std::to_string(cpu_count) + "-way at clock '" +
                       clock_label + "'");
}

ScalingTable build_scaling_table(const std::vector<ScalingModel>& model_per_clock,
                                 const std::vector<CpuConfig>& configs) {
    if (model_per_clock.empty() || configs.empty())
        throw domain_error("scaling table needs at least one model and one CPU config");

    ScalingTable t;
    for (const ScalingModel& m : model_per_clock) t.clock_labels.push_back(m.clock_label);
    for (const CpuConfig& c : configs) t.cpu_counts.push_back(c.cpu_count);
    t.cells.resize(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        t.cells[i].resize(model_per_clock.size());
        for (std::size_t j = 0; j < model_per_clock.size(); ++j)
            t.cells[i][j] = predict_throughput(model_per_clock[j], double(configs[i].cpu_count));
    }
    fill_deltas(t);
    return t;
}

ScalingTable vendor_scaling_table(const std::vector<std::string>& clock_labels,
                                  const std::vector<CpuConfig>& configs,
                                  const std::vector<std::vector<double>>& cells) {
    if (clock_labels.empty() || configs.empty())
        throw domain_error("scaling table needs at least one clock variant and one CPU config");
    if (cells.size() != configs.size())
        throw domain_error("vendor cell rows do not match the CPU config list");
    for (const auto& row : cells)
        if (row.size() != clock_labels.size())
            throw domain_error("vendor cell columns do not match the clock variant list");

    ScalingTable t;
    t.clock_labels = clock_labels;
    for (const CpuConfig& c : configs) t.cpu_counts.push_back(c.cpu_count);
    t.cells = cells;
    fill_deltas(t);
    return t;
}

double headroom_delta(double base_tpm, double upgraded_tpm) {
    if (!(base_tpm > 0.0)) throw domain_error("base throughput must be positive");
    return (upgraded_tpm - base_tpm) / base_tpm;
}

}  // namespace capplan
