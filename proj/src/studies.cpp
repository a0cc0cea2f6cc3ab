#include "fsothz/studies.hpp"

#include <cmath>

#include "fsothz/errors.hpp"

namespace fsothz {
namespace {

constexpr std::uint64_t kDefaultOutageTrials = 10'000'000;
constexpr std::uint64_t kDefaultRateTrials = 100'000;

// Grid points built as integer ratios so each value is the double nearest its
// decimal label and round-trips cleanly through CSV and manifest.
std::vector<double> ratio_grid(int first, int last, int step, double denom) {
    std::vector<double> points;
    for (int i = first; i <= last; i += step) {
        points.push_back(static_cast<double>(i) / denom);
    }
    return points;
}

void moderate_turbulence(Scenario& scenario) {
    scenario.fso.cn2 = 5e-13;
    scenario.fso.alpha_f = 5.838;
    scenario.fso.beta_f = 4.249;
}

} // namespace

const std::vector<std::string>& study_names() {
    static const std::vector<std::string> names = {
        "fig2-distance", "fig3-power", "fig4-visibility", "fig5-beamwidth"};
    return names;
}

Study make_study(const std::string& name, const Scenario& base,
                 std::uint64_t trials, std::uint64_t seed, unsigned workers,
                 const std::vector<std::string>& strategies) {
    Study study;
    study.name = name;
    study.scenario = base;
    study.spec.seed = seed;
    study.spec.workers = workers;

    if (name == "fig2-distance") {
        study.spec.axis = SweepAxis::kUeDistance;
        study.spec.points = ratio_grid(0, 400, 25, 1.0);
        study.spec.strategies = {"mode1", "mode2", "mode3", "mode4",
                                 "mode5", "mode6", "mode7"};
        study.spec.metric = Metric::kOutage;
        study.spec.trials_per_point = kDefaultOutageTrials;
    } else if (name == "fig3-power") {
        moderate_turbulence(study.scenario);
        study.spec.axis = SweepAxis::kTxSnrDb;
        study.spec.points = ratio_grid(0, 40, 2, 1.0);
        study.spec.strategies = {"fso", "subthz", "hard", "soft", "mrc"};
        study.spec.metric = Metric::kOutage;
        // The common outage threshold of the power study is the radio
        // decision threshold; soft switching applies its own protocol
        // thresholds instead.
        study.spec.outage_threshold_db = base.switching.subthz_db;
        study.spec.trials_per_point = kDefaultOutageTrials;
    } else if (name == "fig4-visibility") {
        study.spec.axis = SweepAxis::kVisibilityKm;
        study.spec.points = ratio_grid(5, 100, 5, 100.0);
        for (double point : ratio_grid(110, 200, 10, 100.0)) {
            study.spec.points.push_back(point);
        }
        study.spec.strategies = {"fso", "subthz", "hard", "soft", "mrc"};
        study.spec.metric = Metric::kErgodicRate;
        study.spec.trials_per_point = kDefaultRateTrials;
    } else if (name == "fig5-beamwidth") {
        moderate_turbulence(study.scenario);
        // Narrow-beam misalignment geometry, shared by both links.
        study.scenario.fso.receiver_radius_m = 0.1;
        study.scenario.fso.jitter_sigma_m = 0.12;
        study.scenario.subthz.receiver_radius_m = 0.1;
        study.scenario.subthz.jitter_sigma_m = 0.12;
        study.spec.axis = SweepAxis::kBeamwidthM;
        study.spec.points = ratio_grid(10, 100, 5, 100.0);
        study.spec.strategies = {"fso-200m",    "fso-400m",  "subthz-200m",
                                 "subthz-400m", "hard-200m", "hard-400m",
                                 "mrc-200m",    "mrc-400m"};
        study.spec.metric = Metric::kOutage;
        study.spec.trials_per_point = kDefaultOutageTrials;
    } else {
        throw ConfigError("study", "unknown study `" + name + "`");
    }

    if (trials != 0) {
        study.spec.trials_per_point = trials;
    }
    if (!strategies.empty()) {
        study.spec.strategies = strategies;
    }
    validate_scenario(study.scenario);
    return study;
}

} // namespace fsothz
