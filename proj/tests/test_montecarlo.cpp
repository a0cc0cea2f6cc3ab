#include <cmath>
#include <vector>

#include "doctest.h"
#include "fsothz/errors.hpp"
#include "fsothz/montecarlo.hpp"
#include "fsothz/network.hpp"
#include "fsothz/scenario.hpp"

using namespace fsothz;

namespace {

// A bare Rayleigh radio link (no misalignment, single path) whose outage has
// the closed form 1 - exp(-threshold / mean).
LinkTarget rayleigh_target(double mean_snr_db, double threshold_linear) {
    LinkTarget target;
    target.subthz.alpha = 2.0;
    target.subthz.mu = 1.0;
    target.subthz.paths = 1;
    target.subthz.has_pointing = false;
    target.subthz.mean_snr = std::pow(10.0, mean_snr_db / 10.0);
    target.switching = to_linear(SwitchThresholdsDb{});
    target.outage_threshold = threshold_linear;
    return target;
}

} // namespace

TEST_CASE("proportion estimates carry pinned Wilson intervals") {
    McEstimate e = proportion_estimate(10, 100);
    CHECK(e.value == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(e.ci_low == doctest::Approx(0.0552291370607).epsilon(1e-9));
    CHECK(e.ci_high == doctest::Approx(0.174365661505).epsilon(1e-9));
    CHECK(e.std_error == doctest::Approx(0.03).epsilon(1e-9));
    CHECK(e.low_confidence);

    e = proportion_estimate(0, 50);
    CHECK(e.value == 0.0);
    CHECK(e.ci_low == 0.0);
    CHECK(e.ci_high == doctest::Approx(0.0713475991334).epsilon(1e-9));
    CHECK(e.low_confidence);

    e = proportion_estimate(50, 50);
    CHECK(e.value == 1.0);
    CHECK(e.ci_high == 1.0);
    CHECK(e.ci_low == doctest::Approx(0.928652400867).epsilon(1e-9));

    e = proportion_estimate(30, 100);
    CHECK_FALSE(e.low_confidence);

    CHECK_THROWS_AS(proportion_estimate(5, 4), ParameterError);
    CHECK_THROWS_AS(proportion_estimate(0, 0), ParameterError);
}

TEST_CASE("mean estimates use the sample variance") {
    const McEstimate e = mean_estimate(10.0, 30.0, 10);
    CHECK(e.value == doctest::Approx(1.0));
    const double want_se = std::sqrt((30.0 - 10.0) / 9.0 / 10.0);
    CHECK(e.std_error == doctest::Approx(want_se).epsilon(1e-12));
    CHECK(e.ci_low == doctest::Approx(1.0 - 1.959963984540054 * want_se));
    CHECK(e.ci_high == doctest::Approx(1.0 + 1.959963984540054 * want_se));
    CHECK_FALSE(e.low_confidence);
}

TEST_CASE("link target resolution applies the load threshold by default") {
    const Scenario s = table_defaults();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const LinkTarget by_load = resolve_link_target(s, 200.0, nan);
    CHECK(by_load.outage_threshold == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(by_load.fso.alpha == doctest::Approx(4.343));
    CHECK(by_load.subthz.paths == 4);

    const LinkTarget pinned = resolve_link_target(s, 200.0, 5.0);
    CHECK(pinned.outage_threshold ==
          doctest::Approx(3.16227766017).epsilon(1e-10));
}

TEST_CASE("outage estimator matches the Rayleigh closed form") {
    const std::uint64_t n = 200000;
    for (double mean_db : {0.0, 10.0, 20.0}) {
        const LinkTarget target = rayleigh_target(mean_db, 1.0);
        const McEstimate e =
            estimate_link_outage(target, LinkStrategy::kSubThzOnly, n, 91, 1);
        const double want = 1.0 - std::exp(-1.0 / target.subthz.mean_snr);
        const double se = std::sqrt(want * (1.0 - want) / n);
        INFO("mean_db = ", mean_db);
        CHECK(std::abs(e.value - want) < 5.0 * se);
    }
}

TEST_CASE("rate estimator matches the Rayleigh integral") {
    const LinkTarget target = rayleigh_target(10.0, 1.0);
    const McEstimate e =
        estimate_link_rate(target, LinkStrategy::kSubThzOnly, 200000, 17, 1);
    CHECK(std::abs(e.value - 2.90651480841) < 5.0 * e.std_error);
}

TEST_CASE("estimates are invariant under the worker count") {
    const Scenario s = table_defaults();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const LinkTarget target = resolve_link_target(s, 200.0, nan);

    const McEstimate one =
        estimate_link_outage(target, LinkStrategy::kHard, 50000, 5, 1);
    const McEstimate three =
        estimate_link_outage(target, LinkStrategy::kHard, 50000, 5, 3);
    CHECK(one.value == three.value);
    CHECK(one.events == three.events);
    CHECK(one.trials == three.trials);

    const McEstimate rate1 =
        estimate_link_rate(target, LinkStrategy::kMrc, 30000, 5, 1);
    const McEstimate rate4 =
        estimate_link_rate(target, LinkStrategy::kMrc, 30000, 5, 4);
    CHECK(rate1.value == rate4.value);
    CHECK(rate1.std_error == rate4.std_error);

    const Topology m2 = build_mode(2, s);
    const McEstimate e2e1 = estimate_e2e_outage(m2, s, 350.0, 20000, 5, 1);
    const McEstimate e2e3 = estimate_e2e_outage(m2, s, 350.0, 20000, 5, 3);
    CHECK(e2e1.value == e2e3.value);
    CHECK(e2e1.events == e2e3.events);
}

TEST_CASE("per-hop failures compose independently along a chain") {
    // Two identical radio hops in series, with an access link too strong to
    // fail: end-to-end outage must equal 1 - (1 - p)^2 for the single-hop
    // outage p.
    Scenario s = table_defaults();
    s.mmwave.tx_snr_db = 200.0;
    // Back the hop transmit power off so single-hop outage is sizable.
    s.service.tx_snr_db = 20.0;

    Topology chain;
    chain.mode = 3;
    chain.nodes = {{0.0, 0}, {200.0, 0}, {400.0, 10}};
    const double threshold_db = 5.0;
    const double threshold = std::pow(10.0, threshold_db / 10.0);
    for (int i = 0; i < 2; ++i) {
        HopSpec hop;
        hop.from_node = i;
        hop.to_node = i + 1;
        hop.length_m = 200.0;
        hop.has_fso = false;
        hop.has_subthz = true;
        hop.strategy = HopStrategy::kSingle;
        hop.threshold_snr = threshold;
        chain.hops.push_back(hop);
    }
    chain.fixed_serving_node = 2;

    const std::uint64_t n = 400000;
    const McEstimate e2e = estimate_e2e_outage(chain, s, 400.0, n, 111, 2);

    const LinkTarget hop_target = resolve_link_target(s, 200.0, threshold_db);
    const McEstimate hop = estimate_link_outage(
        hop_target, LinkStrategy::kSubThzOnly, n, 222, 2);

    const double want = 1.0 - (1.0 - hop.value) * (1.0 - hop.value);
    const double se = std::sqrt(2.0 * (1.0 - hop.value) * hop.std_error *
                                    2.0 * (1.0 - hop.value) * hop.std_error +
                                e2e.std_error * e2e.std_error);
    CHECK(std::abs(e2e.value - want) < 5.0 * se);
}

TEST_CASE("switch rate estimates behave like probabilities and favor soft") {
    const Scenario s = table_defaults();
    LinkTarget target = resolve_link_target(s, 200.0, 5.0);
    // Balance the links well above the hysteresis band. Hard selection flips
    // whenever the instantaneous ordering flips, which is scale-invariant;
    // soft switching only reacts to fades that reach the band, so it must
    // switch less up here.
    target.fso.mean_snr = std::pow(10.0, 2.5);
    target.subthz.mean_snr = std::pow(10.0, 2.5);

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const McEstimate hard = estimate_switch_rate(
            target, LinkStrategy::kHard, 2000, 5, seed, 1);
        const McEstimate soft = estimate_switch_rate(
            target, LinkStrategy::kSoft, 2000, 5, seed, 1);
        CHECK(hard.value >= 0.0);
        CHECK(hard.value <= 1.0);
        CHECK(soft.value >= 0.0);
        CHECK(soft.value < hard.value);
    }

    CHECK_THROWS_AS(estimate_switch_rate(target, LinkStrategy::kMrc, 100, 5,
                                         1, 1),
                    ParameterError);
    CHECK_THROWS_AS(estimate_switch_rate(target, LinkStrategy::kHard, 1, 5,
                                         1, 1),
                    ParameterError);
}

TEST_CASE("sweep cells reproduce independently of the grid around them") {
    Scenario s = table_defaults();

    SweepSpec full;
    full.axis = SweepAxis::kTxSnrDb;
    full.points = {10.0, 15.0, 20.0};
    full.strategies = {"fso", "hard"};
    full.trials_per_point = 20000;
    full.seed = 31337;
    full.metric = Metric::kOutage;
    full.outage_threshold_db = 5.0;
    full.workers = 1;
    const std::vector<SweepRow> all = run_sweep(s, full);
    REQUIRE(all.size() == 6);

    SweepSpec subset = full;
    subset.points = {15.0};
    subset.strategies = {"hard"};
    const std::vector<SweepRow> one = run_sweep(s, subset);
    REQUIRE(one.size() == 1);

    bool found = false;
    for (const SweepRow& row : all) {
        if (row.axis_value == 15.0 && row.strategy == "hard") {
            found = true;
            CHECK(row.estimate.value == one[0].estimate.value);
            CHECK(row.estimate.events == one[0].estimate.events);
        }
    }
    CHECK(found);
}

TEST_CASE("sweep validation rejects inconsistent requests") {
    const Scenario s = table_defaults();

    SweepSpec spec;
    spec.axis = SweepAxis::kTxSnrDb;
    spec.points = {};
    spec.strategies = {"hard"};
    CHECK_THROWS_AS(run_sweep(s, spec), ConfigError);

    spec.points = {10.0, 10.0};
    CHECK_THROWS_AS(run_sweep(s, spec), ConfigError);

    spec.points = {10.0, 20.0};
    spec.strategies = {"mode2"};
    CHECK_THROWS_AS(run_sweep(s, spec), ConfigError);

    spec.axis = SweepAxis::kUeDistance;
    spec.strategies = {"hard"};
    CHECK_THROWS_AS(run_sweep(s, spec), ConfigError);

    spec.strategies = {"mode2"};
    spec.metric = Metric::kErgodicRate;
    CHECK_THROWS_AS(run_sweep(s, spec), ConfigError);

    spec.metric = Metric::kOutage;
    spec.trials_per_point = 100;
    spec.workers = 1;
    CHECK_NOTHROW(run_sweep(s, spec));

    CHECK_THROWS_AS(axis_from_string("bogus"), ConfigError);
    CHECK_THROWS_AS(metric_from_string("bogus"), ConfigError);
}

TEST_CASE("length-suffixed strategies pin the hop length") {
    Scenario s = table_defaults();
    SweepSpec spec;
    spec.axis = SweepAxis::kBeamwidthM;
    spec.points = {0.4};
    spec.strategies = {"subthz-200m", "subthz-400m"};
    spec.trials_per_point = 40000;
    spec.seed = 7;
    spec.metric = Metric::kOutage;
    spec.outage_threshold_db = 5.0;
    spec.workers = 1;
    const std::vector<SweepRow> rows = run_sweep(s, spec);
    REQUIRE(rows.size() == 2);
    // Twice the distance costs ~6 dB of spreading: strictly worse outage.
    CHECK(rows[0].estimate.value < rows[1].estimate.value);

    spec.strategies = {"subthz-0m"};
    CHECK_THROWS_AS(run_sweep(s, spec), ConfigError);
    spec.strategies = {"bogus"};
    CHECK_THROWS_AS(run_sweep(s, spec), ConfigError);
}

TEST_CASE("strategy outage ordering under shared draws") {
    Scenario s = table_defaults();
    s.service.tx_snr_db = 15.0;
    const LinkTarget target = resolve_link_target(s, 200.0, 5.0);
    const std::uint64_t n = 100000;

    const double p_fso =
        estimate_link_outage(target, LinkStrategy::kFsoOnly, n, 3, 1).value;
    const double p_hard =
        estimate_link_outage(target, LinkStrategy::kHard, n, 3, 1).value;
    const double p_mrc =
        estimate_link_outage(target, LinkStrategy::kMrc, n, 3, 1).value;
    const double p_soft =
        estimate_link_outage(target, LinkStrategy::kSoft, n, 3, 1).value;

    // Same seed, role-keyed streams: all strategies see identical draws, so
    // the per-sample nesting mrc <= hard <= fso holds without noise.
    CHECK(p_mrc <= p_hard);
    CHECK(p_hard <= p_fso);
    CHECK(p_fso > 0.0);
    // Soft judges outage by its own serving-link thresholds, so it is not
    // nested with the others; it must still stay near the optical baseline.
    CHECK(p_soft > 0.0);
    CHECK(p_soft < p_fso + 5.0 * std::sqrt(p_fso * (1 - p_fso) / n));
}
