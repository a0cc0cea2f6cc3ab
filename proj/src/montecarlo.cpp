#include "fsothz/montecarlo.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <thread>

#include "fsothz/errors.hpp"

namespace fsothz {
namespace {

constexpr double kZ95 = 1.959963984540054;

// Trials per accumulation block. Workers claim whole blocks and partials are
// reduced in block order, which keeps results bit-identical for any worker
// count; per-trial streams depend only on (seed, trial index) anyway.
constexpr std::uint64_t kBlockTrials = 4096;

unsigned effective_workers(unsigned requested) {
    if (requested != 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw != 0 ? hw : 1;
}

template <typename BlockFn>
void run_blocks(std::uint64_t trials, unsigned workers, BlockFn&& block_fn) {
    const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
    const auto worker_loop = [&](std::atomic<std::uint64_t>& next) {
        for (;;) {
            const std::uint64_t block = next.fetch_add(1);
            if (block >= blocks) {
                return;
            }
            const std::uint64_t first = block * kBlockTrials;
            const std::uint64_t last =
                std::min(trials, first + kBlockTrials);
            block_fn(block, first, last);
        }
    };

    std::atomic<std::uint64_t> next{0};
    const unsigned n = effective_workers(workers);
    if (n <= 1 || blocks <= 1) {
        worker_loop(next);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        pool.emplace_back([&] { worker_loop(next); });
    }
    for (std::thread& thread : pool) {
        thread.join();
    }
}

// Counts trials satisfying a predicate of (seed, trial index).
template <typename TrialFn>
McEstimate run_proportion(std::uint64_t trials, std::uint64_t seed,
                          unsigned workers, TrialFn&& trial_fn) {
    if (trials < 1) {
        throw ParameterError("estimator: trials must be at least 1");
    }
    const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<std::uint32_t> counts(blocks, 0);
    run_blocks(trials, workers,
               [&](std::uint64_t block, std::uint64_t first, std::uint64_t last) {
                   std::uint32_t count = 0;
                   for (std::uint64_t t = first; t < last; ++t) {
                       if (trial_fn(TrialStream(seed, t))) {
                           ++count;
                       }
                   }
                   counts[block] = count;
               });
    std::uint64_t events = 0;
    for (std::uint32_t count : counts) {
        events += count;
    }
    return proportion_estimate(events, trials);
}

// Averages a per-trial statistic of (seed, trial index).
template <typename TrialFn>
McEstimate run_mean(std::uint64_t trials, std::uint64_t seed, unsigned workers,
                    TrialFn&& trial_fn) {
    if (trials < 1) {
        throw ParameterError("estimator: trials must be at least 1");
    }
    const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<double> sums(blocks, 0.0);
    std::vector<double> sum_sqs(blocks, 0.0);
    run_blocks(trials, workers,
               [&](std::uint64_t block, std::uint64_t first, std::uint64_t last) {
                   double sum = 0.0;
                   double sum_sq = 0.0;
                   for (std::uint64_t t = first; t < last; ++t) {
                       const double x = trial_fn(TrialStream(seed, t));
                       sum += x;
                       sum_sq += x * x;
                   }
                   sums[block] = sum;
                   sum_sqs[block] = sum_sq;
               });
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t block = 0; block < blocks; ++block) {
        sum += sums[block];
        sum_sq += sum_sqs[block];
    }
    return mean_estimate(sum, sum_sq, trials);
}

struct LinkSnrPair {
    double fso;
    double subthz;
};

LinkSnrPair draw_link_pair(const LinkTarget& target, Xoshiro256pp& fso_stream,
                           Xoshiro256pp& subthz_stream) {
    return {target.fso.mean_snr * draw_fso_fade(fso_stream, target.fso),
            target.subthz.mean_snr *
                draw_rf_fade(subthz_stream, target.subthz)};
}

// Stationary soft-switching slot: warm the state machine through
// kSoftWarmSlots i.i.d. slots, then return the decision of the next one.
SoftDecision soft_stationary_slot(const LinkTarget& target,
                                  const TrialStream& trial) {
    Xoshiro256pp fso_stream = trial.stream(kRoleHopFso);
    Xoshiro256pp subthz_stream = trial.stream(kRoleHopSubThz);
    HybridState state;
    SoftDecision decision{0.0, false};
    for (int slot = 0; slot <= kSoftWarmSlots; ++slot) {
        const LinkSnrPair snr =
            draw_link_pair(target, fso_stream, subthz_stream);
        decision = soft_step(state, snr.fso, snr.subthz, target.switching);
    }
    return decision;
}

double strategy_snr(const LinkTarget& target, LinkStrategy strategy,
                    const TrialStream& trial) {
    switch (strategy) {
    case LinkStrategy::kFsoOnly: {
        Xoshiro256pp stream = trial.stream(kRoleHopFso);
        return target.fso.mean_snr * draw_fso_fade(stream, target.fso);
    }
    case LinkStrategy::kSubThzOnly: {
        Xoshiro256pp stream = trial.stream(kRoleHopSubThz);
        return target.subthz.mean_snr * draw_rf_fade(stream, target.subthz);
    }
    case LinkStrategy::kHard: {
        Xoshiro256pp fso_stream = trial.stream(kRoleHopFso);
        Xoshiro256pp subthz_stream = trial.stream(kRoleHopSubThz);
        const LinkSnrPair snr =
            draw_link_pair(target, fso_stream, subthz_stream);
        return hard_select(snr.fso, snr.subthz);
    }
    case LinkStrategy::kMrc: {
        Xoshiro256pp fso_stream = trial.stream(kRoleHopFso);
        Xoshiro256pp subthz_stream = trial.stream(kRoleHopSubThz);
        const LinkSnrPair snr =
            draw_link_pair(target, fso_stream, subthz_stream);
        return mrc_combine(snr.fso, snr.subthz);
    }
    case LinkStrategy::kSoft:
        return soft_stationary_slot(target, trial).effective_snr;
    }
    return 0.0;
}

} // namespace

McEstimate proportion_estimate(std::uint64_t events, std::uint64_t trials) {
    if (trials < 1) {
        throw ParameterError("proportion estimate: trials must be at least 1");
    }
    if (events > trials) {
        throw ParameterError("proportion estimate: events exceed trials");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(events) / n;

    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;

    McEstimate est;
    est.value = p;
    est.trials = trials;
    est.std_error = std::sqrt(p * (1.0 - p) / n);
    // At the boundary counts the exact interval endpoint is 0 or 1; the
    // arithmetic above can leave a rounding residue there.
    est.ci_low = events == 0 ? 0.0 : std::max(0.0, center - half);
    est.ci_high = events == trials ? 1.0 : std::min(1.0, center + half);
    est.events = events;
    est.low_confidence = events < 20;
    return est;
}

McEstimate mean_estimate(double sum, double sum_sq, std::uint64_t trials) {
    if (trials < 1) {
        throw ParameterError("mean estimate: trials must be at least 1");
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    double variance = 0.0;
    if (trials > 1) {
        variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    }
    const double std_error = std::sqrt(variance / n);

    McEstimate est;
    est.value = mean;
    est.trials = trials;
    est.std_error = std_error;
    est.ci_low = mean - kZ95 * std_error;
    est.ci_high = mean + kZ95 * std_error;
    return est;
}

LinkTarget resolve_link_target(const Scenario& scenario, double hop_length_m,
                               double outage_threshold_db) {
    LinkTarget target;
    target.fso = resolve_fso_link(scenario, hop_length_m);
    target.subthz = resolve_subthz_link(scenario, hop_length_m);
    target.switching = to_linear(scenario.switching);
    if (std::isnan(outage_threshold_db)) {
        target.outage_threshold = node_threshold_snr(
            scenario.service.ues_per_node, scenario.service.rate_per_ue);
    } else {
        target.outage_threshold = std::pow(10.0, outage_threshold_db / 10.0);
    }
    return target;
}

McEstimate estimate_link_outage(const LinkTarget& target, LinkStrategy strategy,
                                std::uint64_t trials, std::uint64_t seed,
                                unsigned workers) {
    if (strategy == LinkStrategy::kSoft) {
        // Soft switching defines outage through its own per-slot decision.
        return run_proportion(trials, seed, workers,
                              [&](const TrialStream& trial) {
                                  return soft_stationary_slot(target, trial)
                                      .in_outage;
                              });
    }
    return run_proportion(
        trials, seed, workers, [&](const TrialStream& trial) {
            return outage_decision(strategy_snr(target, strategy, trial),
                                   target.outage_threshold);
        });
}

McEstimate estimate_link_rate(const LinkTarget& target, LinkStrategy strategy,
                              std::uint64_t trials, std::uint64_t seed,
                              unsigned workers) {
    return run_mean(trials, seed, workers, [&](const TrialStream& trial) {
        return std::log2(1.0 + strategy_snr(target, strategy, trial));
    });
}

McEstimate estimate_switch_rate(const LinkTarget& target, LinkStrategy strategy,
                                std::uint32_t trace_length,
                                std::uint64_t traces, std::uint64_t seed,
                                unsigned workers) {
    if (strategy != LinkStrategy::kHard && strategy != LinkStrategy::kSoft) {
        throw ParameterError(
            "switch rate: strategy must be hard or soft switching");
    }
    if (trace_length < 2) {
        throw ParameterError("switch rate: trace length must be at least 2");
    }
    const bool soft = strategy == LinkStrategy::kSoft;
    return run_mean(traces, seed, workers, [&](const TrialStream& trial) {
        Xoshiro256pp fso_stream = trial.stream(kRoleHopFso);
        Xoshiro256pp subthz_stream = trial.stream(kRoleHopSubThz);

        // Slot 0 only establishes the starting link; transitions are counted
        // from slot 1 on, for either protocol.
        std::uint64_t switches = 0;
        if (soft) {
            HybridState state;
            LinkSnrPair snr = draw_link_pair(target, fso_stream, subthz_stream);
            soft_step(state, snr.fso, snr.subthz, target.switching);
            state.switch_count = 0;
            for (std::uint32_t slot = 1; slot < trace_length; ++slot) {
                snr = draw_link_pair(target, fso_stream, subthz_stream);
                soft_step(state, snr.fso, snr.subthz, target.switching);
            }
            switches = state.switch_count;
        } else {
            LinkSnrPair snr = draw_link_pair(target, fso_stream, subthz_stream);
            ActiveLink active = hard_choice(snr.fso, snr.subthz);
            for (std::uint32_t slot = 1; slot < trace_length; ++slot) {
                snr = draw_link_pair(target, fso_stream, subthz_stream);
                const ActiveLink next = hard_choice(snr.fso, snr.subthz);
                if (next != active) {
                    ++switches;
                }
                active = next;
            }
        }
        return static_cast<double>(switches) /
               static_cast<double>(trace_length - 1);
    });
}

McEstimate estimate_e2e_outage(const Topology& topology,
                               const Scenario& scenario, double ue_x_m,
                               std::uint64_t trials, std::uint64_t seed,
                               unsigned workers) {
    const CompiledPath path(topology, scenario, ue_x_m);
    return run_proportion(trials, seed, workers,
                          [&](const TrialStream& trial) {
                              return path.sample(trial).outage;
                          });
}

std::uint64_t sweep_point_seed(std::uint64_t master_seed, double axis_value,
                               const std::string& strategy) {
    return derive_seed(master_seed, std::bit_cast<std::uint64_t>(axis_value),
                       fnv1a64(strategy.data(), strategy.size()));
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::kUeDistance: return "ue_distance";
    case SweepAxis::kTxSnrDb: return "tx_snr_db";
    case SweepAxis::kVisibilityKm: return "visibility_km";
    case SweepAxis::kBeamwidthM: return "beamwidth_m";
    }
    return "";
}

const char* to_string(Metric metric) {
    return metric == Metric::kOutage ? "outage" : "ergodic_rate";
}

SweepAxis axis_from_string(const std::string& name) {
    if (name == "ue_distance") return SweepAxis::kUeDistance;
    if (name == "tx_snr_db") return SweepAxis::kTxSnrDb;
    if (name == "visibility_km") return SweepAxis::kVisibilityKm;
    if (name == "beamwidth_m") return SweepAxis::kBeamwidthM;
    throw ConfigError("axis", "unknown axis `" + name + "`");
}

Metric metric_from_string(const std::string& name) {
    if (name == "outage") return Metric::kOutage;
    if (name == "ergodic_rate") return Metric::kErgodicRate;
    throw ConfigError("metric", "unknown metric `" + name + "`");
}

namespace {

struct ParsedStrategy {
    bool is_mode = false;
    int mode = 0;
    LinkStrategy link = LinkStrategy::kHard;
    double length_m = std::numeric_limits<double>::quiet_NaN();
};

ParsedStrategy parse_strategy(const std::string& name) {
    ParsedStrategy parsed;
    if (name.size() == 5 && name.rfind("mode", 0) == 0 && name[4] >= '1' &&
        name[4] <= '7') {
        parsed.is_mode = true;
        parsed.mode = name[4] - '0';
        return parsed;
    }
    std::string base = name;
    const std::size_t dash = name.rfind('-');
    if (dash != std::string::npos && name.size() > dash + 2 &&
        name.back() == 'm') {
        const std::string digits = name.substr(dash + 1, name.size() - dash - 2);
        if (!digits.empty() &&
            digits.find_first_not_of("0123456789.") == std::string::npos) {
            parsed.length_m = std::stod(digits);
            if (!(parsed.length_m > 0.0)) {
                throw ConfigError("strategies", "strategy `" + name +
                                                    "` has a non-positive "
                                                    "hop length");
            }
            base = name.substr(0, dash);
        }
    }
    if (base == "fso") {
        parsed.link = LinkStrategy::kFsoOnly;
    } else if (base == "subthz") {
        parsed.link = LinkStrategy::kSubThzOnly;
    } else if (base == "hard") {
        parsed.link = LinkStrategy::kHard;
    } else if (base == "soft") {
        parsed.link = LinkStrategy::kSoft;
    } else if (base == "mrc") {
        parsed.link = LinkStrategy::kMrc;
    } else {
        throw ConfigError("strategies", "unknown strategy `" + name + "`");
    }
    return parsed;
}

void validate_spec(const SweepSpec& spec) {
    if (spec.points.empty()) {
        throw ConfigError("points", "sweep needs at least one axis point");
    }
    for (std::size_t i = 1; i < spec.points.size(); ++i) {
        if (!(spec.points[i] > spec.points[i - 1])) {
            throw ConfigError("points", "axis points must be strictly increasing");
        }
    }
    if (spec.strategies.empty()) {
        throw ConfigError("strategies", "sweep needs at least one strategy");
    }
    if (spec.trials_per_point < 1) {
        throw ConfigError("trials", "trials per point must be at least 1");
    }
    for (const std::string& name : spec.strategies) {
        const ParsedStrategy parsed = parse_strategy(name);
        if (parsed.is_mode != (spec.axis == SweepAxis::kUeDistance)) {
            throw ConfigError("strategies",
                              parsed.is_mode
                                  ? "mode strategies require the ue_distance axis"
                                  : "link strategies cannot run on the "
                                    "ue_distance axis");
        }
    }
    if (spec.axis == SweepAxis::kUeDistance &&
        spec.metric != Metric::kOutage) {
        throw ConfigError("metric",
                          "the ue_distance axis estimates outage only");
    }
}

Scenario scenario_at_point(const Scenario& base, SweepAxis axis,
                           double value) {
    Scenario scenario = base;
    switch (axis) {
    case SweepAxis::kUeDistance:
        break;
    case SweepAxis::kTxSnrDb:
        scenario.service.tx_snr_db = value;
        break;
    case SweepAxis::kVisibilityKm:
        scenario.fso.visibility_km = value;
        break;
    case SweepAxis::kBeamwidthM:
        scenario.fso.beamwidth_m = value;
        scenario.subthz.beamwidth_m = value;
        break;
    }
    validate_scenario(scenario);
    return scenario;
}

} // namespace

std::vector<SweepRow> run_sweep(
    const Scenario& scenario, const SweepSpec& spec,
    const std::function<void(const SweepRow&)>& on_row) {
    validate_spec(spec);
    std::vector<SweepRow> rows;
    rows.reserve(spec.points.size() * spec.strategies.size());

    for (double value : spec.points) {
        const Scenario point_scenario =
            scenario_at_point(scenario, spec.axis, value);
        for (const std::string& name : spec.strategies) {
            const ParsedStrategy parsed = parse_strategy(name);
            const std::uint64_t seed =
                sweep_point_seed(spec.seed, value, name);
            const auto start = std::chrono::steady_clock::now();

            McEstimate estimate;
            if (parsed.is_mode) {
                const Topology topology =
                    build_mode(parsed.mode, point_scenario);
                estimate = estimate_e2e_outage(topology, point_scenario, value,
                                               spec.trials_per_point, seed,
                                               spec.workers);
            } else {
                const double length =
                    std::isnan(parsed.length_m)
                        ? point_scenario.geometry.hop_length_m
                        : parsed.length_m;
                const LinkTarget target = resolve_link_target(
                    point_scenario, length, spec.outage_threshold_db);
                estimate =
                    spec.metric == Metric::kOutage
                        ? estimate_link_outage(target, parsed.link,
                                               spec.trials_per_point, seed,
                                               spec.workers)
                        : estimate_link_rate(target, parsed.link,
                                             spec.trials_per_point, seed,
                                             spec.workers);
            }

            const auto stop = std::chrono::steady_clock::now();
            SweepRow row;
            row.axis_value = value;
            row.strategy = name;
            row.estimate = estimate;
            row.seconds =
                std::chrono::duration<double>(stop - start).count();
            rows.push_back(row);
            if (on_row) {
                on_row(rows.back());
            }
        }
    }
    return rows;
}

} // namespace fsothz
