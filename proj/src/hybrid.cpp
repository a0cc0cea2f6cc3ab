#include "fsothz/hybrid.hpp"

#include <cmath>

#include "fsothz/errors.hpp"
#include "fsothz/scenario.hpp"

namespace fsothz {

SwitchThresholds to_linear(const SwitchThresholdsDb& db_thresholds) {
    if (!(db_thresholds.fso_upper_db >= db_thresholds.fso_lower_db)) {
        throw ParameterError(
            "switch thresholds: fso upper must be at least fso lower");
    }
    const auto lin = [](double db) { return std::pow(10.0, db / 10.0); };
    return {lin(db_thresholds.fso_upper_db), lin(db_thresholds.fso_lower_db),
            lin(db_thresholds.subthz_db)};
}

double hard_select(double snr_fso, double snr_subthz) {
    return snr_fso >= snr_subthz ? snr_fso : snr_subthz;
}

ActiveLink hard_choice(double snr_fso, double snr_subthz) {
    return snr_fso >= snr_subthz ? ActiveLink::kFso : ActiveLink::kSubThz;
}

double mrc_combine(double snr_fso, double snr_subthz) {
    return snr_fso + snr_subthz;
}

bool outage_decision(double effective_snr, double threshold_snr) {
    return effective_snr < threshold_snr;
}

SoftDecision soft_step(HybridState& state, double snr_fso, double snr_subthz,
                       const SwitchThresholds& thresholds) {
    if (state.active == ActiveLink::kFso) {
        if (snr_fso >= thresholds.fso_lower) {
            return {snr_fso, false};
        }
        if (snr_subthz >= thresholds.subthz) {
            state.active = ActiveLink::kSubThz;
            ++state.switch_count;
            return {snr_subthz, false};
        }
        // Both links down: stay camped on the failing optical link.
        return {snr_fso, true};
    }
    if (snr_fso >= thresholds.fso_upper) {
        state.active = ActiveLink::kFso;
        ++state.switch_count;
        return {snr_fso, false};
    }
    if (snr_subthz >= thresholds.subthz) {
        return {snr_subthz, false};
    }
    return {snr_subthz, true};
}

} // namespace fsothz
