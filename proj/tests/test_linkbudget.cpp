#include <cmath>

#include "doctest.h"
#include "fsothz/errors.hpp"
#include "fsothz/linkbudget.hpp"
#include "fsothz/rng.hpp"
#include "fsothz/scenario.hpp"

using namespace fsothz;

namespace {

double to_db(double linear) { return 10.0 * std::log10(linear); }

Atmosphere default_air() {
    Atmosphere a;
    a.pressure_pa = 101325.0;
    a.temperature_k = 298.0;
    a.humidity = 0.5;
    return a;
}

} // namespace

TEST_CASE("gaseous absorption reproduces pinned line values") {
    const Atmosphere air = default_air();
    CHECK(gas_attenuation_db_per_km(22.235080e9, air) ==
          doctest::Approx(0.281508297017).epsilon(1e-9));
    CHECK(gas_attenuation_db_per_km(60e9, air) ==
          doctest::Approx(13.5429864248).epsilon(1e-9));
    CHECK(gas_attenuation_db_per_km(118.750334e9, air) ==
          doctest::Approx(1.73182432864).epsilon(1e-9));
    CHECK(gas_attenuation_db_per_km(119e9, air) ==
          doctest::Approx(1.70936780112).epsilon(1e-9));
    CHECK(gas_attenuation_db_per_km(183.310087e9, air) ==
          doctest::Approx(39.4545379949).epsilon(1e-9));
    CHECK(gas_attenuation_db_per_km(30e9, air) ==
          doctest::Approx(0.164015422142).epsilon(1e-9));
    CHECK(gas_attenuation_db_per_km(300e9, air) ==
          doctest::Approx(0.314264500759).epsilon(1e-9));

    Atmosphere dry = air;
    dry.humidity = 0.0;
    CHECK(gas_attenuation_db_per_km(119e9, dry) ==
          doctest::Approx(1.69903450013).epsilon(1e-9));

    Atmosphere cold_wet;
    cold_wet.pressure_pa = 90000.0;
    cold_wet.temperature_k = 278.0;
    cold_wet.humidity = 0.9;
    CHECK(gas_attenuation_db_per_km(140e9, cold_wet) ==
          doctest::Approx(0.445558761202).epsilon(1e-9));
}

TEST_CASE("gaseous absorption peaks sit in physical bands") {
    const Atmosphere air = default_air();
    const double oxy118 = gas_attenuation_db_per_km(118.750334e9, air);
    CHECK(oxy118 > 1.0);
    CHECK(oxy118 < 2.5);
    const double water22 = gas_attenuation_db_per_km(22.235080e9, air);
    CHECK(water22 > 0.1);
    CHECK(water22 < 0.3);
    const double water183 = gas_attenuation_db_per_km(183.310087e9, air);
    CHECK(water183 > 20.0);
    CHECK(water183 < 40.0);
    const double oxy60 = gas_attenuation_db_per_km(60e9, air);
    CHECK(oxy60 > 10.0);
    CHECK(oxy60 < 20.0);
    CHECK_THROWS_AS(gas_attenuation_db_per_km(500e9, air), ParameterError);
}

TEST_CASE("fog scattering follows the visibility law") {
    CHECK(kim_scatter_coeff_per_km(10.0, 1550e-9) ==
          doctest::Approx(0.101675670752).epsilon(1e-10));
    CHECK(kim_scatter_coeff_per_km(2.0, 1550e-9) ==
          doctest::Approx(0.986659305032).epsilon(1e-10));
    CHECK(kim_scatter_coeff_per_km(0.6, 1550e-9) ==
          doctest::Approx(5.87528050601).epsilon(1e-10));
    CHECK(kim_scatter_coeff_per_km(0.3, 1550e-9) ==
          doctest::Approx(13.0333333333).epsilon(1e-10));
    CHECK(kim_scatter_coeff_per_km(60.0, 1550e-9) ==
          doctest::Approx(0.0124186701817).epsilon(1e-10));

    CHECK(fso_path_gain(10.0, 1550e-9, 200.0) ==
          doctest::Approx(0.979870230296).epsilon(1e-10));
    CHECK(fso_path_gain(10.0, 1550e-9, 400.0) ==
          doctest::Approx(0.960145668221).epsilon(1e-10));
    CHECK(fso_path_gain(0.3, 1550e-9, 200.0) ==
          doctest::Approx(0.0737800678885).epsilon(1e-10));
}

TEST_CASE("radio path gain combines spreading, antennas, and absorption") {
    Atmosphere vacuum;
    vacuum.pressure_pa = 0.0;
    vacuum.temperature_k = 298.0;
    vacuum.humidity = 0.0;

    // Free-space spreading at 119 GHz over 200 m is 119.9793224 dB; the
    // 55+55 dBi antennas leave a net -9.9793224 dB.
    CHECK(to_db(subthz_path_gain(119e9, 200.0, 55.0, 55.0, vacuum)) ==
          doctest::Approx(-9.9793224).epsilon(1e-7));
    CHECK(to_db(subthz_path_gain(119e9, 400.0, 55.0, 55.0, vacuum)) ==
          doctest::Approx(-15.9999223).epsilon(1e-7));

    const Atmosphere air = default_air();
    const double expected_gas_db = 1.70936780112 * 0.2;
    CHECK(to_db(subthz_path_gain(119e9, 200.0, 55.0, 55.0, air)) ==
          doctest::Approx(-9.9793224 - expected_gas_db).epsilon(1e-7));

    // 30 GHz over 200 m spreads 108.0108082 dB; 40+40 dBi antennas and a
    // fixed 15.1 dB/km oxygen figure leave -31.0308 dB.
    CHECK(to_db(mmwave_path_gain(30e9, 200.0, 40.0, 40.0, 15.1, 0.0)) ==
          doctest::Approx(-28.0108082 - 3.02).epsilon(1e-7));
}

TEST_CASE("optical electrical SNR composes as a squared product") {
    const double gain = 0.979870230296;
    const LinkBudget budget = make_fso_budget(20.0, gain, 1.0);
    CHECK(budget.technology == LinkTech::kFso);
    CHECK(budget.mean_snr ==
          doctest::Approx(100.0 * gain * 100.0 * gain).epsilon(1e-12));

    const LinkBudget rf = make_rf_budget(LinkTech::kSubThz, 20.0, 0.01);
    CHECK(rf.mean_snr == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(make_rf_budget(LinkTech::kFso, 20.0, 0.01),
                    ParameterError);
}

TEST_CASE("link resolution keeps configured shapes at the nominal hop") {
    const Scenario s = table_defaults();
    const FsoLinkModel at200 = resolve_fso_link(s, 200.0);
    CHECK(at200.alpha == doctest::Approx(4.343));
    CHECK(at200.beta == doctest::Approx(2.492));

    const FsoLinkModel at400 = resolve_fso_link(s, 400.0);
    CHECK(at400.alpha == doctest::Approx(4.27345617578).epsilon(1e-9));
    CHECK(at400.beta == doctest::Approx(1.33774991554).epsilon(1e-9));

    Scenario moderate = s;
    moderate.fso.cn2 = 5e-13;
    const FsoLinkModel m400 = resolve_fso_link(moderate, 400.0);
    CHECK(m400.alpha == doctest::Approx(3.99531069028).epsilon(1e-9));
    CHECK(m400.beta == doctest::Approx(1.76614972988).epsilon(1e-9));
}

TEST_CASE("radio link resolution carries diversity order and misalignment") {
    const Scenario s = table_defaults();
    const RfLinkModel thz = resolve_subthz_link(s, 200.0);
    CHECK(thz.paths == 4);
    CHECK(thz.has_pointing);
    CHECK(thz.geometry.xi == doctest::Approx(4.53703134437).epsilon(1e-9));
    const double tx = std::pow(10.0, s.service.tx_snr_db / 10.0);
    CHECK(thz.mean_snr ==
          doctest::Approx(tx * subthz_path_gain(119e9, 200.0, 55.0, 55.0,
                                                s.atmosphere))
              .epsilon(1e-12));

    const RfLinkModel access = resolve_access_link(s, 250.0);
    CHECK(access.paths == 4);
    CHECK_FALSE(access.has_pointing);
    CHECK(access.alpha == doctest::Approx(2.0));
}

TEST_CASE("fade draws compose into instantaneous SNR") {
    const Scenario s = table_defaults();
    const FsoLinkModel fso = resolve_fso_link(s, 200.0);
    const RfLinkModel thz = resolve_subthz_link(s, 200.0);

    TrialStream trial(99, 0);
    Xoshiro256pp fso_stream = trial.stream(kRoleHopFso);
    Xoshiro256pp thz_stream = trial.stream(kRoleHopSubThz);
    const double fso_fade = draw_fso_fade(fso_stream, fso);
    const double thz_fade = draw_rf_fade(thz_stream, thz);
    CHECK(fso_fade > 0.0);
    CHECK(thz_fade > 0.0);

    CHECK(fso.mean_snr * fso_fade > 0.0);

    // Same trial, same role: the draw reproduces bit for bit.
    TrialStream again(99, 0);
    Xoshiro256pp fso_stream2 = again.stream(kRoleHopFso);
    CHECK(draw_fso_fade(fso_stream2, fso) == fso_fade);
}

TEST_CASE("short or non-positive ranges are rejected") {
    const Scenario s = table_defaults();
    CHECK_THROWS_AS(resolve_fso_link(s, 0.0), ParameterError);
    CHECK_THROWS_AS(resolve_subthz_link(s, -5.0), ParameterError);
    CHECK_THROWS_AS(fso_path_gain(0.0, 1550e-9, 200.0), ParameterError);
}
