#pragma once

// Hybrid link selection on one optical + radio link pair.
//
//   hard  per-slot selection of the stronger link (ties go optical)
//   soft  hysteresis state machine camped on one link until its own
//         thresholds force a handoff, to cut switching churn
//   mrc   maximal-ratio combining of both links' SNRs
//
// All SNRs and thresholds here are linear. Outage is a strict comparison:
// an SNR exactly at the threshold still carries the demanded rate.

#include <cstdint>

namespace fsothz {

enum class ActiveLink { kFso, kSubThz };

struct SwitchThresholds {
    double fso_upper;   // soft: return to optical at/above this
    double fso_lower;   // soft: leave optical below this
    double subthz;      // soft: radio usable at/above this
};

SwitchThresholds to_linear(const struct SwitchThresholdsDb& db_thresholds);

// Stronger-link SNR; equals max(snr_fso, snr_subthz).
double hard_select(double snr_fso, double snr_subthz);

// Which link hard selection uses this slot (optical wins ties).
ActiveLink hard_choice(double snr_fso, double snr_subthz);

double mrc_combine(double snr_fso, double snr_subthz);

bool outage_decision(double effective_snr, double threshold_snr);

// Soft switching state across a slot sequence. A fresh state camps on the
// optical link, matching an acquisition that starts on the primary.
struct HybridState {
    ActiveLink active = ActiveLink::kFso;
    std::uint64_t switch_count = 0;
};

struct SoftDecision {
    double effective_snr;
    bool in_outage;
};

// Advances the soft state machine one slot and returns the SNR carried on
// the link that serves the slot. Camped on optical: stay while the optical
// SNR holds fso_lower, or when the radio link cannot clear its own
// threshold anyway; hand off otherwise. Camped on radio: return to optical
// once it recovers to fso_upper; stay while the radio SNR clears its
// threshold. The slot is in outage when the serving link is below its own
// threshold (after any handoff this slot).
SoftDecision soft_step(HybridState& state, double snr_fso, double snr_subthz,
                       const SwitchThresholds& thresholds);

} // namespace fsothz
