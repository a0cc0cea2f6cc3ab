#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "doctest.h"
#include "fsothz/errors.hpp"
#include "fsothz/montecarlo.hpp"
#include "fsothz/report.hpp"
#include "fsothz/scenario.hpp"

using namespace fsothz;

TEST_CASE("value formatting is stable and round-trips") {
    CHECK(format_value(0.0) == "0");
    CHECK(format_value(1.0) == "1");
    CHECK(format_value(0.00446) == "0.00446");
    CHECK(format_value(0.25) == "0.25");
    CHECK(format_value(-3.5) == "-3.5");
    CHECK(format_value(9.5e-4) == "9.5e-04");
    CHECK(format_value(1e-7) == "1e-07");

    for (double v : {0.1 + 0.2, 1.0 / 3.0, 123456.789, 2.5e-5}) {
        const double back = std::stod(format_value(v));
        CHECK(back == v);
    }
}

TEST_CASE("sweep CSV carries the fixed header and flag column") {
    SweepRow row;
    row.axis_value = 15.0;
    row.strategy = "hard";
    row.estimate = proportion_estimate(5, 1000);
    const std::string csv = sweep_csv({row});

    const std::string header =
        "axis,strategy,estimate,std_error,ci_low,ci_high,trials,flags\n";
    CHECK(csv.substr(0, header.size()) == header);
    CHECK(csv.find("15,hard,0.005,") != std::string::npos);
    CHECK(csv.find(",1000,low-confidence\n") != std::string::npos);

    row.estimate = proportion_estimate(500, 1000);
    const std::string confident = sweep_csv({row});
    CHECK(confident.find("low-confidence") == std::string::npos);
    CHECK(confident.find(",1000,\n") != std::string::npos);
}

TEST_CASE("manifests round-trip every field including 64-bit seeds") {
    RunManifest m;
    m.tool_version = kToolVersion;
    m.study = "fig3-power";
    m.scenario_text = serialize_scenario(table_defaults());
    m.scenario_digest = fnv1a64(m.scenario_text.data(),
                                m.scenario_text.size());
    m.spec.axis = SweepAxis::kTxSnrDb;
    m.spec.points = {0.0, 2.0, 4.0};
    m.spec.strategies = {"fso", "subthz", "hard"};
    m.spec.trials_per_point = 1000000;
    m.spec.seed = 0xFFFFFFFFFFFFFFFFULL;
    m.spec.metric = Metric::kOutage;
    m.spec.outage_threshold_db = 5.0;
    m.spec.workers = 2;
    m.point_seconds = {0.5, 0.25, 0.125};

    const std::string json = manifest_json(m);
    const RunManifest back = parse_manifest(json);
    CHECK(back.tool_version == m.tool_version);
    CHECK(back.study == m.study);
    CHECK(back.scenario_text == m.scenario_text);
    CHECK(back.scenario_digest == m.scenario_digest);
    CHECK(back.spec.axis == m.spec.axis);
    CHECK(back.spec.points == m.spec.points);
    CHECK(back.spec.strategies == m.spec.strategies);
    CHECK(back.spec.trials_per_point == m.spec.trials_per_point);
    CHECK(back.spec.seed == m.spec.seed);
    CHECK(back.spec.metric == m.spec.metric);
    CHECK(back.spec.outage_threshold_db == 5.0);
    // Worker count is a machine knob, not part of the experiment identity;
    // the manifest drops it and reruns choose their own.
    CHECK(back.spec.workers == 0);
    CHECK(manifest_json(back) == json);
}

TEST_CASE("manifests keep an unset outage threshold unset") {
    RunManifest m;
    m.tool_version = kToolVersion;
    m.study = "fig2-distance";
    m.scenario_text = "";
    m.spec.axis = SweepAxis::kUeDistance;
    m.spec.points = {0.0};
    m.spec.strategies = {"mode1"};
    m.spec.trials_per_point = 1;
    const RunManifest back = parse_manifest(manifest_json(m));
    CHECK(std::isnan(back.spec.outage_threshold_db));
}

TEST_CASE("malformed manifests raise ConfigError") {
    CHECK_THROWS_AS(parse_manifest("not json at all"), ConfigError);
    CHECK_THROWS_AS(parse_manifest("{\"study\": 3}"), ConfigError);
    CHECK_THROWS_AS(parse_manifest("{}"), ConfigError);
}

TEST_CASE("atomic writes land complete or not at all") {
    const std::string path = "test_report_atomic.tmp";
    write_file_atomic(path, "first\n");
    CHECK(read_file(path) == "first\n");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    std::remove(path.c_str());

    CHECK_THROWS_AS(
        write_file_atomic("/nonexistent_dir_zz/file.csv", "x"),
        std::runtime_error);
    CHECK_THROWS_AS(read_file("/nonexistent_dir_zz/file.csv"),
                    std::runtime_error);
}
