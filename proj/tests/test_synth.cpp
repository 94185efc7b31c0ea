#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "capplan/synth.hpp"

using namespace capplan;

namespace {

TrafficProfile west_coast(double width) {
    ProfileShape shape;
    shape.peak_hour = 4.0;
    shape.width = width;
    return unimodal_profile(shape);
}

}  // namespace

TEST_CASE("unimodal profile peaks where asked and tops out at 100") {
    TrafficProfile p = west_coast(3.0);
    CHECK(p.values.size() == 96);
    CHECK(p.peak_hour() == doctest::Approx(4.0));
    CHECK(*std::max_element(p.values.begin(), p.values.end()) == doctest::Approx(100.0));
    for (double v : p.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 100.0);
    }
}

TEST_CASE("secondary hump shows up without displacing the main peak") {
    ProfileShape shape;
    shape.peak_hour = 4.0;
    shape.width = 3.0;
    shape.hump_hour = 16.5;
    shape.hump_height = 30.0;
    TrafficProfile p = unimodal_profile(shape);
    CHECK(p.peak_hour() == doctest::Approx(4.0));
    // local bump: 16:30 is higher than the trough before it
    CHECK(p.value_at(16.5) > p.value_at(12.0));
}

TEST_CASE("coastal superposition peak lands between the component peaks") {
    // identical profiles 3h apart: east peaks at 1:00 UTC, west at 4:00 UTC
    TrafficProfile component = west_coast(3.0);
    TrafficProfile agg = coastal_profile(component, 3.0, {0.5, 0.5});
    const double peak = agg.peak_hour();
    CHECK(peak >= 1.0);
    CHECK(peak <= 4.0);
    // the symmetric equal-weight sum peaks midway, near the 2:00 of the
    // observed traffic
    CHECK(peak == doctest::Approx(2.5).epsilon(0.2));
}

TEST_CASE("peak stays inside [1:00, 4:00] across profile widths") {
    for (double width : {0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0}) {
        TrafficProfile agg = coastal_profile(west_coast(width), 3.0, {0.5, 0.5});
        const double peak = agg.peak_hour();
        CHECK(peak >= 1.0);
        CHECK(peak <= 4.0);
    }
}

TEST_CASE("zero shift with equal weights reproduces the component") {
    TrafficProfile component = west_coast(2.0);
    TrafficProfile agg = coastal_profile(component, 0.0, {0.5, 0.5});
    REQUIRE(agg.values.size() == component.values.size());
    for (std::size_t i = 0; i < agg.values.size(); ++i)
        CHECK(agg.values[i] == doctest::Approx(component.values[i]).epsilon(1e-12));
    CHECK(agg.peak_hour() == doctest::Approx(component.peak_hour()));
}

TEST_CASE("aggregate is bounded by the component max and floored by weighted peaks") {
    TrafficProfile component = west_coast(3.0);
    TrafficProfile agg = coastal_profile(component, 3.0, {0.5, 0.5});
    const double comp_max = *std::max_element(component.values.begin(), component.values.end());
    for (std::size_t i = 0; i < agg.values.size(); ++i) {
        const double hour = double(i) * 0.25;
        // brute-force recomputation of the superposition at this bin
        const double expected =
            0.5 * component.values[i] + 0.5 * component.value_at(hour + 3.0);
        CHECK(agg.values[i] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(agg.values[i] <= comp_max + 1e-12);
    }
    CHECK(agg.value_at(4.0) >= 0.5 * component.value_at(4.0) - 1e-12);
    CHECK(agg.value_at(1.0) >= 0.5 * component.value_at(4.0) - 1e-12);
}

TEST_CASE("superposition is linear in the component integrals") {
    TrafficProfile component = west_coast(3.0);
    TrafficProfile agg = coastal_profile(component, 3.0, {0.3, 0.7});
    double comp_sum = 0.0, agg_sum = 0.0;
    for (double v : component.values) comp_sum += v;
    for (double v : agg.values) agg_sum += v;
    // each shifted copy integrates to the component integral (wrap-around),
    // shift being a whole number of bins here
    CHECK(agg_sum == doctest::Approx(comp_sum).epsilon(1e-9));
}

TEST_CASE("weights must sum to one") {
    TrafficProfile component = west_coast(3.0);
    CHECK_THROWS_AS(coastal_profile(component, 3.0, {0.6, 0.6}), domain_error);
}

TEST_CASE("capped server clips only above the cap") {
    std::vector<double> demand{20.0, 99.0, 100.0, 167.0, 45.0};
    std::vector<double> clipped = simulate_capped_server(demand, 100.0);
    CHECK(clipped == std::vector<double>{20.0, 99.0, 100.0, 100.0, 45.0});

    // constant 167 pins at 100: the one-and-two-thirds-servers example
    std::vector<double> flat(10, 167.0);
    for (double u : simulate_capped_server(flat, 100.0)) CHECK(u == 100.0);

    std::vector<double> low{1.0, 2.0, 3.0};
    CHECK(simulate_capped_server(low, 100.0) == low);
    CHECK_THROWS_AS(simulate_capped_server(low, 0.0), domain_error);
}

TEST_CASE("clipping is idempotent and matches pointwise min") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 250.0);
    std::vector<double> demand(500);
    for (double& d : demand) d = u(rng);
    std::vector<double> once = simulate_capped_server(demand, 100.0);
    std::vector<double> twice = simulate_capped_server(once, 100.0);
    CHECK(once == twice);
    for (std::size_t i = 0; i < demand.size(); ++i)
        CHECK(once[i] == std::min(demand[i], 100.0));
}

TEST_CASE("generated days are bit-identical under the same seed") {
    TrafficProfile profile = coastal_profile(west_coast(3.0), 3.0, {0.5, 0.5}).normalized();
    const minute_t start = make_utc_minutes(1999, 9, 29);
    SimulatedDay a = generate_day(profile, 160.0, {15.0, 0.8, 0.5}, 2.0, 42, start);
    SimulatedDay b = generate_day(profile, 160.0, {15.0, 0.8, 0.5}, 2.0, 42, start);
    REQUIRE(a.metrics.samples.size() == b.metrics.samples.size());
    for (std::size_t i = 0; i < a.metrics.samples.size(); ++i) {
        CHECK(a.metrics.samples[i].utilization == b.metrics.samples[i].utilization);
        CHECK(a.metrics.samples[i].regressors == b.metrics.samples[i].regressors);
    }
    CHECK(a.true_demand == b.true_demand);

    SimulatedDay c = generate_day(profile, 160.0, {15.0, 0.8, 0.5}, 2.0, 43, start);
    bool any_differs = false;
    for (std::size_t i = 0; i < a.metrics.samples.size(); ++i)
        if (a.metrics.samples[i].utilization != c.metrics.samples[i].utilization)
            any_differs = true;
    CHECK(any_differs);
}

TEST_CASE("planted identity holds exactly before noise") {
    TrafficProfile profile = coastal_profile(west_coast(3.0), 3.0, {0.5, 0.5}).normalized();
    const std::vector<double> coef{12.0, 0.9, 0.4, 0.2};
    SimulatedDay day =
        generate_day(profile, 90.0, coef, 0.0, 5, make_utc_minutes(1999, 9, 29));
    for (std::size_t i = 0; i < day.metrics.samples.size(); ++i) {
        double rhs = coef[0];
        for (std::size_t j = 0; j + 1 < coef.size(); ++j)
            rhs += coef[j + 1] * day.metrics.samples[i].regressors[j];
        CHECK(rhs == doctest::Approx(day.true_demand[i]).epsilon(1e-12));
        // no clipping at scale 90, no noise: U equals D
        CHECK(day.metrics.samples[i].utilization ==
              doctest::Approx(day.true_demand[i]).epsilon(1e-12));
    }
}

TEST_CASE("demand above the cap emits clipped utilization") {
    TrafficProfile profile = coastal_profile(west_coast(3.0), 3.0, {0.5, 0.5}).normalized();
    SimulatedDay day =
        generate_day(profile, 160.0, {15.0, 0.8}, 0.0, 5, make_utc_minutes(1999, 9, 29));
    bool saw_clip = false;
    for (std::size_t i = 0; i < day.metrics.samples.size(); ++i) {
        CHECK(day.metrics.samples[i].utilization <= 100.0);
        if (day.true_demand[i] > 100.0) {
            CHECK(day.metrics.samples[i].utilization == 100.0);
            saw_clip = true;
        }
    }
    CHECK(saw_clip);
    CHECK(*std::max_element(day.true_demand.begin(), day.true_demand.end()) ==
          doctest::Approx(160.0));
}

TEST_CASE("bad generation parameters are rejected") {
    TrafficProfile profile = west_coast(3.0);
    const minute_t start = make_utc_minutes(1999, 9, 29);
    CHECK_THROWS_AS(generate_day(profile, -5.0, {1.0, 1.0}, 0.0, 1, start), domain_error);
    CHECK_THROWS_AS(generate_day(profile, 90.0, {1.0}, 0.0, 1, start), arity_error);
    CHECK_THROWS_AS(generate_day(profile, 90.0, {1.0, 0.0}, 0.0, 1, start), domain_error);
    CHECK_THROWS_AS(generate_day(profile, 90.0, {1.0, 1.0}, -2.0, 1, start), domain_error);
}

TEST_CASE("derived seeds differ across days and repeat across runs") {
    CHECK(derive_seed(42, 0) == derive_seed(42, 0));
    CHECK(derive_seed(42, 0) != derive_seed(42, 1));
    CHECK(derive_seed(42, 0) != derive_seed(43, 0));
}

TEST_CASE("truth sidecar lists one row per bin") {
    TrafficProfile profile = west_coast(3.0);
    SimulatedDay day =
        generate_day(profile, 90.0, {10.0, 1.0}, 0.0, 3, make_utc_minutes(1999, 9, 29));
    std::ostringstream out;
    write_truth_csv(out, day);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "DateTime,true_demand");
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == day.true_demand.size());
}
