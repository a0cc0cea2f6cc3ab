#pragma once

// Monte Carlo estimators and sweep drivers.
//
// Reproducibility contract: an estimate is a pure function of (inputs, seed).
// Trials are grouped into fixed-size blocks; workers claim blocks from a
// shared counter, but per-trial streams depend only on the trial index and
// block partials are reduced in block order, so the result is bit-identical
// for any worker count. Sweep points derive their seeds from the master seed,
// the axis value's bit pattern, and the strategy name, so re-running any
// subset of a sweep reproduces the matching rows exactly.

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fsothz/hybrid.hpp"
#include "fsothz/linkbudget.hpp"
#include "fsothz/network.hpp"
#include "fsothz/scenario.hpp"

namespace fsothz {

struct McEstimate {
    double value = 0.0;
    std::uint64_t trials = 0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t events = 0;     // outage/switch counts; 0 for rate estimates
    bool low_confidence = false;  // fewer than 20 events behind a probability
};

// 95% Wilson score interval packaged as a proportion estimate.
McEstimate proportion_estimate(std::uint64_t events, std::uint64_t trials);

// Sample-mean estimate with a normal 95% interval.
McEstimate mean_estimate(double sum, double sum_sq, std::uint64_t trials);

enum class LinkStrategy { kFsoOnly, kSubThzOnly, kHard, kSoft, kMrc };

// A single parallel FSO + sub-THz hop resolved for study: both link models,
// the switching thresholds, and the outage threshold the study compares
// against (the service node threshold unless the study pins its own).
struct LinkTarget {
    FsoLinkModel fso{};
    RfLinkModel subthz{};
    SwitchThresholds switching{};
    double outage_threshold = 0.0;  // linear
};

// Resolves the study hop at the given length. outage_threshold_db overrides
// the node threshold when finite; pass NaN to use the service-load default.
LinkTarget resolve_link_target(const Scenario& scenario, double hop_length_m,
                               double outage_threshold_db);

// Slots of soft-switching warm-up before a stationary-state measurement.
inline constexpr int kSoftWarmSlots = 24;

// Outage probability of one hop under a strategy. Soft switching is stateful,
// so its estimate runs each trial as a short i.i.d. block-fading trace and
// measures the slot after kSoftWarmSlots warm-up steps.
McEstimate estimate_link_outage(const LinkTarget& target, LinkStrategy strategy,
                                std::uint64_t trials, std::uint64_t seed,
                                unsigned workers);

// Ergodic rate E[log2(1 + snr)] of one hop under a strategy; soft switching
// measured in stationary state as above.
McEstimate estimate_link_rate(const LinkTarget& target, LinkStrategy strategy,
                              std::uint64_t trials, std::uint64_t seed,
                              unsigned workers);

// Mean active-link switches per slot over i.i.d. block-fading traces.
// Strategy must be kHard or kSoft.
McEstimate estimate_switch_rate(const LinkTarget& target, LinkStrategy strategy,
                                std::uint32_t trace_length,
                                std::uint64_t traces, std::uint64_t seed,
                                unsigned workers);

// End-to-end outage for a UE position in a built topology.
McEstimate estimate_e2e_outage(const Topology& topology,
                               const Scenario& scenario, double ue_x_m,
                               std::uint64_t trials, std::uint64_t seed,
                               unsigned workers);

enum class SweepAxis { kUeDistance, kTxSnrDb, kVisibilityKm, kBeamwidthM };
enum class Metric { kOutage, kErgodicRate };

// One sweep: a grid on one axis evaluated for a list of strategies.
// Strategies are named: modes "mode1".."mode7" on the UE-distance axis,
// link strategies "fso", "subthz", "hard", "soft", "mrc" elsewhere, with an
// optional "-<length>m" suffix pinning the hop length (e.g. "fso-400m").
struct SweepSpec {
    SweepAxis axis = SweepAxis::kTxSnrDb;
    std::vector<double> points;
    std::vector<std::string> strategies;
    std::uint64_t trials_per_point = 1;
    std::uint64_t seed = 1;
    Metric metric = Metric::kOutage;
    double outage_threshold_db = std::numeric_limits<double>::quiet_NaN();
    unsigned workers = 0;  // 0 picks hardware concurrency
};

struct SweepRow {
    double axis_value = 0.0;
    std::string strategy;
    McEstimate estimate{};
    double seconds = 0.0;
};

// Derived seed of one (point, strategy) cell.
std::uint64_t sweep_point_seed(std::uint64_t master_seed, double axis_value,
                               const std::string& strategy);

// Runs the whole grid. Rows come back axis-ascending in declared strategy
// order. The optional callback fires after each completed row.
std::vector<SweepRow> run_sweep(
    const Scenario& scenario, const SweepSpec& spec,
    const std::function<void(const SweepRow&)>& on_row = {});

const char* to_string(SweepAxis axis);
const char* to_string(Metric metric);
SweepAxis axis_from_string(const std::string& name);
Metric metric_from_string(const std::string& name);

} // namespace fsothz
