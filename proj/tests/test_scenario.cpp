#include <cmath>
#include <string>

#include "doctest.h"
#include "fsothz/errors.hpp"
#include "fsothz/scenario.hpp"

using namespace fsothz;

TEST_CASE("defaults carry the baseline operating point") {
    const Scenario s = table_defaults();
    CHECK(s.fso.wavelength_m == doctest::Approx(1550e-9));
    CHECK(s.fso.cn2 == doctest::Approx(1e-12));
    CHECK(s.fso.alpha_f == doctest::Approx(4.343));
    CHECK(s.fso.beta_f == doctest::Approx(2.492));
    CHECK(s.subthz.frequency_hz == doctest::Approx(119e9));
    CHECK(s.subthz.tx_gain_db == doctest::Approx(55.0));
    CHECK(s.subthz.n_tx == 2);
    CHECK(s.subthz.n_rx == 2);
    CHECK(s.geometry.hop_length_m == doctest::Approx(200.0));
    CHECK(s.geometry.node_height_m == doctest::Approx(60.0));
    CHECK(s.service.ues_per_node == 10);
    CHECK(s.service.rate_per_ue == doctest::Approx(0.1));
    CHECK(s.service.tx_snr_db == doctest::Approx(30.0));
    CHECK(s.switching.fso_upper_db == doctest::Approx(6.0));
    CHECK(s.switching.fso_lower_db == doctest::Approx(4.0));
    CHECK(s.switching.subthz_db == doctest::Approx(5.0));
    CHECK_NOTHROW(validate_scenario(s));
}

TEST_CASE("serialize and parse round-trip exactly") {
    Scenario s = table_defaults();
    s.fso.cn2 = 5e-13;
    s.subthz.mu = 4.25;
    s.mmwave.tx_snr_db = 17.5;
    const std::string text = serialize_scenario(s);
    const Scenario back = parse_scenario(text);
    CHECK(serialize_scenario(back) == text);
    CHECK(back.fso.cn2 == 5e-13);
    CHECK(back.subthz.mu == 4.25);
    CHECK(back.mmwave.tx_snr_db == 17.5);
}

TEST_CASE("parser accepts comments and blank lines") {
    const Scenario s = parse_scenario("# comment\n"
                                      "fso.cn2 = 5e-13\n"
                                      "\n"
                                      "subthz.mu = 4  # trailing note\n");
    CHECK(s.fso.cn2 == 5e-13);
    CHECK(s.subthz.mu == 4.0);
}

TEST_CASE("parser reports unknown keys with the key name") {
    try {
        parse_scenario("fso.nope = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("fso.nope") != std::string::npos);
    }
}

TEST_CASE("parser rejects duplicates, bad lines, and bad numbers") {
    CHECK_THROWS_AS(parse_scenario("fso.cn2 = 1e-12\nfso.cn2 = 2e-12\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario("fso.cn2\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("fso.cn2 = banana\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("subthz.n_tx = 2.5\n"), ConfigError);
    try {
        parse_scenario("fso.cn2 = 1e-12\nbroken line\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("apply_override updates single fields") {
    Scenario s = table_defaults();
    apply_override(s, "geometry.hop_length_m = 400");
    CHECK(s.geometry.hop_length_m == 400.0);
    apply_override(s, "subthz.n_rx=1");
    CHECK(s.subthz.n_rx == 1);
    CHECK_THROWS_AS(apply_override(s, "no.such.key = 1"), ConfigError);
}

TEST_CASE("validation names the offending key") {
    Scenario s = table_defaults();
    s.fso.wavelength_m = -1.0;
    try {
        validate_scenario(s);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("fso.wavelength_m") !=
              std::string::npos);
    }

    s = table_defaults();
    s.switching.fso_upper_db = 3.0; // below the lower threshold
    CHECK_THROWS_AS(validate_scenario(s), ConfigError);

    s = table_defaults();
    s.atmosphere.humidity = 1.5;
    CHECK_THROWS_AS(validate_scenario(s), ConfigError);

    s = table_defaults();
    s.subthz.frequency_hz = 500e9; // beyond the absorption model range
    CHECK_THROWS_AS(validate_scenario(s), ConfigError);
}

TEST_CASE("rate thresholds follow the served load") {
    CHECK(node_threshold_snr(10, 0.1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(node_threshold_snr(20, 0.1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(ue_threshold_snr(0.1) ==
          doctest::Approx(0.0717734625363).epsilon(1e-10));
}

TEST_CASE("missing scenario files raise ConfigError") {
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/path/config.txt"),
                    ConfigError);
}
