#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capplan/config.hpp"
#include "capplan/series.hpp"
#include "capplan/synth.hpp"

namespace capplan {

// One upgrade what-if from the config file: either an explicit delta or a
// base/target cell pair to read out of the scaling table.
struct ScenarioSpec {
    std::string name;
    bool has_delta = false;
    double delta = 0.0;
    int base_cpus = 0;
    std::string base_clock;
    int target_cpus = 0;
    std::string target_clock;
};

// Declarative pipeline settings; flags override individual fields.
struct RunConfig {
    // synthetic data
    int weeks = 8;
    double base_scale = 115.0;
    double weekly_growth = 0.0309;
    double noise = 2.0;
    double regressor_noise = 0.0;
    std::vector<double> coefficients{15.0, 0.8, 0.5, 0.25};
    int bin_minutes = 15;
    ProfileShape shape;
    double shift_hours = 3.0;
    double east_weight = 0.5;
    std::uint64_t seed = 42;
    std::string start_date = "1999-09-29";

    // ingest / demand
    std::string input_path;  // empty: pipeline synthesizes its own input
    ColumnMapping mapping;
    int window_minutes = 15;
    double saturation_threshold = 95.0;

    // growth
    bool pin_u0 = false;
    int horizon_weeks = 26;

    // scaling (paper-experience defaults for an ORACLE back end)
    double sigma = 0.030;
    double lambda = 0.002;
    std::vector<int> cpu_counts{52, 64};
    struct ClockCalibration {
        std::string label;
        double tpm = 0.0;
        int at_cpus = 1;
    };
    std::vector<ClockCalibration> calibrations;

    // scenarios
    std::vector<ScenarioSpec> scenarios;
    std::vector<double> thresholds{100.0, 200.0};

    std::string out_dir = "out";
};

RunConfig run_config_from(const ConfigTable& table);

// Parses argv (without the program name) and executes one subcommand.
// Returns the process exit status: 0 ok, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args);

}  // namespace capplan
