// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capplan/cli.hpp"
#include "capplan/demand.hpp"
#include "capplan/growth.hpp"
#include "capplan/ols.hpp"
#include "capplan/scaling.hpp"
#include "capplan/scenario.hpp"
#include "capplan/series.hpp"
#include "capplan/synth.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace capplan;

namespace {

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void expect_near(double actual, double expected, double tol, const std::string& what) {
        if (!(std::abs(actual - expected) <= tol)) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: got %.10g, want %.10g +/- %.3g", what.c_str(),
                          actual, expected, tol);
            failures_.push_back(buf);
        }
    }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

TrafficProfile paper_profile() {
    ProfileShape shape;
    shape.peak_hour = 4.0;
    shape.width = 3.0;
    return coastal_profile(unimodal_profile(shape), 3.0, {0.5, 0.5}).normalized();
}

// --------------------------------------------------------------- criteria

void table3_reproduction(Check& c) {
    const double sigma = 0.030, lambda = 0.002;
    std::vector<ScalingModel> models{
        {sigma, lambda, calibrate_single_cpu(57605.0, 52.0, sigma, lambda), "333/4"},
        {sigma, lambda, calibrate_single_cpu(75859.0, 52.0, sigma, lambda), "400/8"}};
    std::vector<CpuConfig> configs{{52, 333.0, 4.0}, {64, 400.0, 8.0}};
    ScalingTable t = build_scaling_table(models, configs);

    c.expect_near(t.cells[1][0], 60875.0, 1.0, "64-way 333/4 tpm");
    c.expect_near(t.cells[1][1], 80165.0, 1.0, "64-way 400/8 tpm");
    c.expect_near(t.cpu_delta_pct[0], 0.06, 0.005, "delta-CPU percentage, 333/4");
    c.expect_near(t.cpu_delta_pct[1], 0.06, 0.005, "delta-CPU percentage, 400/8");
    c.expect_near(t.clk_delta_pct[0], 0.32, 0.005, "delta-CLK percentage, 52-way");
    c.expect_near(t.clk_delta_pct[1], 0.32, 0.005, "delta-CLK percentage, 64-way");
    c.expect_near(t.combined_pct, 0.39, 0.005, "combined percentage");
}

void table2_vendor_mode(Check& c) {
    std::vector<CpuConfig> configs{{52, 333.0, 4.0}, {64, 400.0, 8.0}};
    ScalingTable t = vendor_scaling_table({"333/4", "400/8"}, configs,
                                          {{115755.0, 152432.0}, {133629.0, 175969.0}});
    c.expect_near(t.cpu_delta_pct[0], 0.15, 0.005, "delta-CPU percentage, 333/4");
    c.expect_near(t.cpu_delta_pct[1], 0.15, 0.005, "delta-CPU percentage, 400/8");
    c.expect_near(t.clk_delta_pct[0], 0.32, 0.005, "delta-CLK percentage, 52-way");
    c.expect_near(t.clk_delta_pct[1], 0.32, 0.005, "delta-CLK percentage, 64-way");
    c.expect_near(t.combined_pct, 0.52, 0.005, "combined percentage");
    c.expect_near(clock_delta_from_table(t, 52, "333/4", 52, "400/8"), 0.317, 0.001,
                  "clock upgrade delta at 52-way");
}

void growth_arithmetic(Check& c) {
    GrowthModel g;
    g.u0 = 80.62;
    g.rate = 0.0309;
    c.expect_near(project(g, 20.0), 149.56, 0.05, "U(20)");
    c.expect_near(deflate_curve(g, 0.317, 20.0), 102.15, 0.05, "deflated U(20)");
    const DoublingPeriod d = doubling_period(g);
    c.expect_near(d.weeks, 22.43, 0.01, "doubling weeks");
    c.expect_near(d.months_4wk, 5.61, 0.005, "doubling in 4-week months");
}

void crossing_inversion(Check& c) {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u0(1.0, 500.0);
    std::uniform_real_distribution<double> rate(0.001, 0.2);
    std::uniform_real_distribution<double> delta(0.0, 0.9);
    std::uniform_real_distribution<double> threshold(1.0, 1000.0);
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
        GrowthModel g;
        g.u0 = u0(rng);
        g.rate = rate(rng);
        const double d = delta(rng), t = threshold(rng);
        auto w = saturation_week(g, d, t);
        if (!w || std::abs(deflate_curve(g, d, *w) - t) > 1e-9 * t) ++bad;
    }
    c.expect(bad == 0, "inversion drifted beyond 1e-9 on " + std::to_string(bad) + " tuples");

    GrowthModel g;
    g.u0 = 80.62;
    g.rate = 0.0309;
    auto w = saturation_week(g, 0.0, 100.0);
    c.expect(w.has_value(), "baseline crossing exists");
    if (w) c.expect_near(*w, 6.97, 0.01, "baseline crossing of 100%");
}

void ols_oracle_equivalence(Check& c) {
    std::size_t value_misses = 0, ortho_misses = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        DesignMatrix d(50, 6);
        for (std::size_t i = 0; i < 50; ++i) {
            double y = 2.0 * gauss(rng);
            for (std::size_t j = 0; j < 6; ++j) {
                d.x(i, j) = 10.0 * gauss(rng);
                y += (double(j) - 2.5) * d.x(i, j);
            }
            d.response[i] = y;
        }
        OlsFit fit = fit_ols(d);
        std::vector<double> expected = oracle::normal_equations_fit(d);
        if (std::abs(fit.intercept - expected[0]) > 1e-8 * std::max(1.0, std::abs(expected[0])))
            ++value_misses;
        for (std::size_t j = 0; j < 6; ++j)
            if (std::abs(fit.coefficients[j] - expected[j + 1]) >
                1e-8 * std::max(1.0, std::abs(expected[j + 1])))
                ++value_misses;

        double scale = 0.0;
        for (double y : d.response) scale += y * y;
        scale = std::max(1.0, std::sqrt(scale));
        for (std::size_t col = 0; col <= 6; ++col) {
            double dot = 0.0;
            for (std::size_t i = 0; i < 50; ++i)
                dot += fit.residuals[i] * (col == 0 ? 1.0 : d.x(i, col - 1));
            if (std::abs(dot) > 1e-8 * scale) ++ortho_misses;
        }
    }
    c.expect(value_misses == 0,
             std::to_string(value_misses) + " coefficient(s) disagree with the oracle");
    c.expect(ortho_misses == 0,
             std::to_string(ortho_misses) + " residual column(s) not orthogonal");
}

void effective_demand_recovery(Check& c) {
    const TrafficProfile profile = paper_profile();
    const std::vector<double> planted{15.0, 0.8, 0.5, 0.25};
    std::size_t over_bins = 0, over_hits = 0;
    for (int d = 0; d < 5; ++d) {
        SimulatedDay day =
            generate_day(profile, 160.0, planted, 2.0, derive_seed(42, std::uint64_t(d)),
                         make_utc_minutes(1999, 9, 27) + minute_t(d) * kMinutesPerDay);
        DemandModel model = fit_demand_model(day.metrics, 95.0);
        DemandSeries demand = effective_demand_series(model, day.metrics);
        double sq = 0.0;
        for (std::size_t i = 0; i < demand.points.size(); ++i) {
            const double err = demand.points[i].effective - day.true_demand[i];
            sq += err * err;
            if (day.true_demand[i] > 110.0) {
                ++over_bins;
                if (demand.points[i].effective > 100.0) ++over_hits;
            }
        }
        const double rmse = std::sqrt(sq / double(demand.points.size()));
        c.expect(rmse <= 5.0, "day " + std::to_string(d) + " RMSE " + std::to_string(rmse) +
                                  " exceeds 5 points");
    }
    c.expect(over_bins > 0, "no bins with true demand above 110");
    const double hit_rate = double(over_hits) / double(std::max<std::size_t>(over_bins, 1));
    c.expect(hit_rate >= 0.90, "U* exceeded 100 on only " + std::to_string(100.0 * hit_rate) +
                                   "% of bins with demand above 110");
}

void exponential_fit_recovery(Check& c) {
    const double u0 = 80.62, b = 0.0309;
    std::vector<double> recovered;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 0.05);
        std::vector<WeeklyPeak> peaks;
        for (int w = 0; w < 8; ++w)
            peaks.push_back({w, u0 * std::exp(b * w) * std::exp(gauss(rng))});
        recovered.push_back(fit_exponential(peaks).rate);
    }
    std::sort(recovered.begin(), recovered.end());
    const double median = 0.5 * (recovered[49] + recovered[50]);
    c.expect_near(median, b, 0.10 * b, "median recovered growth rate");

    std::vector<WeeklyPeak> clean;
    for (int w = 0; w < 8; ++w) clean.push_back({w, u0 * std::exp(b * w)});
    GrowthModel exact = fit_exponential(clean);
    c.expect_near(exact.u0, u0, 1e-10 * u0, "noiseless U0");
    c.expect_near(exact.rate, b, 1e-10, "noiseless b");
}

void coastal_superposition(Check& c) {
    for (double width : {0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0}) {
        ProfileShape shape;
        shape.peak_hour = 4.0;
        shape.width = width;
        TrafficProfile agg = coastal_profile(unimodal_profile(shape), 3.0, {0.5, 0.5});
        const double peak = agg.peak_hour();
        c.expect(peak >= 1.0 && peak <= 4.0,
                 "width " + std::to_string(width) + ": aggregate peak at " +
                     std::to_string(peak) + "h is outside [1:00, 4:00] UTC");
    }
}

void super_serial_properties(Check& c) {
    c.expect(capacity_ratio(1.0, 0.030, 0.002) == 1.0, "C(1) != 1 exactly");
    c.expect(capacity_ratio(1.0, 0.7, 0.3) == 1.0, "C(1) != 1 exactly at high factors");
    c.expect(capacity_ratio(64.0, 0.0, 0.0) == 64.0, "C(64) != 64 exactly at sigma=lambda=0");
    c.expect(capacity_ratio(17.0, 0.0, 0.0) == 17.0, "C(17) != 17 exactly at sigma=lambda=0");

    const double amdahl = capacity_ratio(1e6, 0.030, 0.0);
    c.expect(std::abs(amdahl - 1.0 / 0.030) <= 0.01 * (1.0 / 0.030),
             "lambda=0 asymptote misses 1/sigma by more than 1%");

    bool monotone = true;
    for (int p = 1; p < 64; ++p)
        if (!(capacity_ratio(p + 1.0, 0.030, 0.002) > capacity_ratio(double(p), 0.030, 0.002)))
            monotone = false;
    c.expect(monotone, "C(p) not strictly increasing on [1, 64]");
}

void round_trip_and_determinism(Check& c) {
    // synth CSV round-trip
    const TrafficProfile profile = paper_profile();
    SimulatedDay day = generate_day(profile, 160.0, {15.0, 0.8, 0.5, 0.25}, 2.0, 42,
                                    make_utc_minutes(1999, 9, 29));
    std::ostringstream out;
    write_metric_csv(out, day.metrics);
    std::istringstream in(out.str());
    MetricSeries back = parse_metric_csv(in, ColumnMapping{});
    bool identical = back.samples.size() == day.metrics.samples.size() &&
                     back.regressor_names == day.metrics.regressor_names;
    if (identical) {
        for (std::size_t i = 0; i < back.samples.size(); ++i) {
            identical = identical &&
                        back.samples[i].timestamp == day.metrics.samples[i].timestamp &&
                        back.samples[i].utilization == day.metrics.samples[i].utilization &&
                        back.samples[i].regressors == day.metrics.samples[i].regressors;
        }
    }
    c.expect(identical, "re-parsed synthetic CSV differs from the emitted series");

    // pipeline byte determinism under a fixed seed
    const fs::path base = fs::temp_directory_path() / "capplan_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    const fs::path cfg_path = base / "run.toml";
    {
        std::ofstream cfg(cfg_path);
        cfg << "[synth]\nweeks = 2\nbase_scale = 120.0\nweekly_growth = 0.0309\nnoise = 2.0\n"
            << "coefficients = [15.0, 0.8, 0.5]\nstart_date = \"1999-09-27\"\n"
            << "[scaling]\nsigma = 0.030\nlambda = 0.002\ncpu_counts = [52, 64]\n"
            << "[[scaling.calibration]]\nlabel = \"333/4\"\ntpm = 57605.0\nat_cpus = 52\n"
            << "[[scaling.calibration]]\nlabel = \"400/8\"\ntpm = 75859.0\nat_cpus = 52\n"
            << "[scenarios]\nthresholds = [100.0, 200.0]\nhorizon_weeks = 26\n"
            << "[[scenarios.case]]\nname = \"worst_case\"\ndelta = 0.0\n"
            << "[[scenarios.case]]\nname = \"combined\"\nbase = \"52:333/4\"\ntarget = \"64:400/8\"\n";
    }
    const fs::path run1 = base / "run1", run2 = base / "run2";
    const int rc1 = run_cli({"pipeline", "--config", cfg_path.string(), "--seed", "42", "--out",
                             run1.string()});
    const int rc2 = run_cli({"pipeline", "--config", cfg_path.string(), "--seed", "42", "--out",
                             run2.string()});
    c.expect(rc1 == 0 && rc2 == 0, "pipeline run failed");
    if (rc1 == 0 && rc2 == 0) {
        std::size_t compared = 0;
        for (const auto& entry : fs::directory_iterator(run1)) {
            const fs::path other = run2 / entry.path().filename();
            std::ifstream a(entry.path(), std::ios::binary), b(other, std::ios::binary);
            std::ostringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            if (sa.str() != sb.str())
                c.expect(false, "artifact " + entry.path().filename().string() +
                                    " differs between identical runs");
            ++compared;
        }
        c.expect(compared >= 13, "expected a full artifact set, saw " + std::to_string(compared));
    }
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "conservative scaling table reproduction", table3_reproduction},
        {2, "vendor table percentages and clock-upgrade delta", table2_vendor_mode},
        {3, "growth projection, deflation and doubling period", growth_arithmetic},
        {4, "saturation week inverts the deflated curve", crossing_inversion},
        {5, "OLS agrees with the normal-equations oracle", ols_oracle_equivalence},
        {6, "effective demand tracks capped true demand", effective_demand_recovery},
        {7, "exponential fit recovery under multiplicative noise", exponential_fit_recovery},
        {8, "coastal superposition peak stays in [1:00, 4:00] UTC", coastal_superposition},
        {9, "super-serial capacity law properties", super_serial_properties},
        {10, "CSV round-trip and pipeline determinism", round_trip_and_determinism},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        std::string crash;
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            crash = e.what();
        }
        const bool ok = crash.empty() && check.failures().empty();
        std::printf("criterion %2d [%s]: %s\n", criterion.id, ok ? "PASS" : "FAIL",
                    criterion.title);
        if (!crash.empty()) std::printf("    exception: %s\n", crash.c_str());
        for (const std::string& f : check.failures()) std::printf("    %s\n", f.c_str());
        if (!ok) ++failed;
    }
    if (failed > 0) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
