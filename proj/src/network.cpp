#include "fsothz/network.hpp"

#include <cmath>

#include "fsothz/errors.hpp"

namespace fsothz {
namespace {

// Receiving node's threshold covers everything it forwards: its own users
// plus all users served further down the chain.
double downstream_threshold(const std::vector<NodeSpec>& nodes,
                            std::size_t to_node, const Scenario& scenario) {
    int ues = 0;
    for (std::size_t i = to_node; i < nodes.size(); ++i) {
        ues += nodes[i].ues_served;
    }
    return node_threshold_snr(ues, scenario.service.rate_per_ue);
}

HopSpec make_hop(int from, int to, double length, bool fso, bool subthz,
                 HopStrategy strategy, double threshold) {
    HopSpec hop;
    hop.from_node = from;
    hop.to_node = to;
    hop.length_m = length;
    hop.has_fso = fso;
    hop.has_subthz = subthz;
    hop.strategy = strategy;
    hop.threshold_snr = threshold;
    return hop;
}

double clamped_slant(const Scenario& scenario, double ue_x_m, double node_x_m) {
    const double dx = ue_x_m - node_x_m;
    const double dh =
        scenario.geometry.node_height_m - scenario.geometry.ue_height_m;
    // Far-field floor keeps the path-loss model in its validity range when a
    // ground-level node sits right on top of the UE.
    return std::max(1.0, std::hypot(dx, dh));
}

} // namespace

Topology build_mode(int mode, const Scenario& scenario) {
    if (mode < 1 || mode > 7) {
        throw ParameterError("build_mode: mode must be in 1..7");
    }
    const double hop = scenario.geometry.hop_length_m;
    const int ues = scenario.service.ues_per_node;

    Topology topo;
    topo.mode = mode;
    switch (mode) {
    case 1:
        topo.nodes = {{0.0, ues}};
        break;
    case 2:
    case 3: {
        topo.nodes = {{0.0, ues}, {hop, ues}, {2.0 * hop, ues}};
        const bool hybrid = mode == 2;
        const double th1 = downstream_threshold(topo.nodes, 1, scenario);
        const double th2 = downstream_threshold(topo.nodes, 2, scenario);
        const HopStrategy strategy =
            hybrid ? HopStrategy::kHard : HopStrategy::kSingle;
        topo.hops.push_back(
            make_hop(0, 1, hop, hybrid, true, strategy, th1));
        topo.hops.push_back(
            make_hop(1, 2, hop, hybrid, true, strategy, th2));
        if (!hybrid) {
            // Parallel direct optical branch past the radio-only chain.
            topo.direct_bypass = make_hop(0, 2, 2.0 * hop, true, false,
                                          HopStrategy::kSingle, th2);
        }
        break;
    }
    case 4:
    case 7: {
        topo.nodes = {{0.0, ues}, {2.0 * hop, ues}};
        const double th = downstream_threshold(topo.nodes, 1, scenario);
        topo.hops.push_back(
            make_hop(0, 1, 2.0 * hop, true, true, HopStrategy::kHard, th));
        if (mode == 7) {
            topo.fixed_serving_node = 1;
        }
        break;
    }
    case 5:
    case 6: {
        topo.nodes = {{0.0, ues}, {hop, ues}};
        const double th = downstream_threshold(topo.nodes, 1, scenario);
        const bool hybrid = mode == 5;
        topo.hops.push_back(make_hop(
            0, 1, hop, hybrid, true,
            hybrid ? HopStrategy::kHard : HopStrategy::kSingle, th));
        topo.fixed_serving_node = 1;
        break;
    }
    default:
        break;
    }
    return topo;
}

int associate_ue(const Topology& topology, double ue_x_m) {
    if (topology.fixed_serving_node >= 0) {
        return topology.fixed_serving_node;
    }
    // Identical access parameters at every node make best-mean-SNR the same
    // as nearest horizontal distance; ties go to the lower index.
    int best = 0;
    double best_dx = std::abs(ue_x_m - topology.nodes[0].x_m);
    for (std::size_t i = 1; i < topology.nodes.size(); ++i) {
        const double dx = std::abs(ue_x_m - topology.nodes[i].x_m);
        if (dx < best_dx) {
            best_dx = dx;
            best = static_cast<int>(i);
        }
    }
    return best;
}

CompiledPath::CompiledPath(const Topology& topology, const Scenario& scenario,
                           double ue_x_m) {
    serving_node_ = associate_ue(topology, ue_x_m);

    for (int i = 0; i < serving_node_; ++i) {
        const HopSpec& spec = topology.hops[static_cast<std::size_t>(i)];
        CompiledHop hop;
        hop.has_fso = spec.has_fso;
        hop.has_subthz = spec.has_subthz;
        hop.strategy = spec.strategy;
        hop.threshold_snr = spec.threshold_snr;
        hop.fso_role = kRoleHopFso + static_cast<std::uint32_t>(i);
        hop.subthz_role = kRoleHopSubThz + static_cast<std::uint32_t>(i);
        if (spec.has_fso) {
            hop.fso = resolve_fso_link(scenario, spec.length_m);
        }
        if (spec.has_subthz) {
            hop.subthz = resolve_subthz_link(scenario, spec.length_m);
        }
        chain_.push_back(hop);
    }

    if (topology.direct_bypass &&
        topology.direct_bypass->to_node == serving_node_) {
        const HopSpec& spec = *topology.direct_bypass;
        CompiledHop hop;
        hop.has_fso = spec.has_fso;
        hop.has_subthz = spec.has_subthz;
        hop.strategy = spec.strategy;
        hop.threshold_snr = spec.threshold_snr;
        hop.fso_role = kRoleDirectFso;
        hop.subthz_role = kRoleDirectFso + 1;
        if (spec.has_fso) {
            hop.fso = resolve_fso_link(scenario, spec.length_m);
        }
        if (spec.has_subthz) {
            hop.subthz = resolve_subthz_link(scenario, spec.length_m);
        }
        bypass_ = hop;
    }

    access_distance_m_ = clamped_slant(
        scenario, ue_x_m,
        topology.nodes[static_cast<std::size_t>(serving_node_)].x_m);
    access_ = resolve_access_link(scenario, access_distance_m_);
    access_threshold_ = ue_threshold_snr(scenario.service.rate_per_ue);
    switching_ = to_linear(scenario.switching);
}

double CompiledPath::hop_effective_snr(const CompiledHop& hop,
                                       const TrialStream& trial,
                                       double* fso_snr,
                                       double* subthz_snr) const {
    double snr_fso = 0.0;
    double snr_subthz = 0.0;
    if (hop.has_fso) {
        Xoshiro256pp stream = trial.stream(hop.fso_role);
        snr_fso = hop.fso.mean_snr * draw_fso_fade(stream, hop.fso);
    }
    if (hop.has_subthz) {
        Xoshiro256pp stream = trial.stream(hop.subthz_role);
        snr_subthz = hop.subthz.mean_snr * draw_rf_fade(stream, hop.subthz);
    }
    if (fso_snr != nullptr) {
        *fso_snr = snr_fso;
    }
    if (subthz_snr != nullptr) {
        *subthz_snr = snr_subthz;
    }
    switch (hop.strategy) {
    case HopStrategy::kSingle:
        return snr_fso + snr_subthz;  // exactly one link present
    case HopStrategy::kHard:
        return hard_select(snr_fso, snr_subthz);
    case HopStrategy::kMrc:
        return mrc_combine(snr_fso, snr_subthz);
    case HopStrategy::kSoft: {
        HybridState state;
        return soft_step(state, snr_fso, snr_subthz, switching_).effective_snr;
    }
    }
    return 0.0;
}

E2eSample CompiledPath::sample(const TrialStream& trial) const {
    E2eSample out;
    out.serving_node = serving_node_;

    bool chain_outage = false;
    for (const CompiledHop& hop : chain_) {
        const double snr = hop_effective_snr(hop, trial, nullptr, nullptr);
        out.chain_snr.push_back(snr);
        chain_outage = chain_outage || outage_decision(snr, hop.threshold_snr);
    }

    bool backhaul_outage = chain_outage;
    if (bypass_) {
        const double snr = hop_effective_snr(*bypass_, trial, nullptr, nullptr);
        out.bypass_snr = snr;
        const bool bypass_outage =
            outage_decision(snr, bypass_->threshold_snr);
        // Either surviving branch backhauls the serving node.
        backhaul_outage = chain_outage && bypass_outage;
    }

    Xoshiro256pp access_stream = trial.stream(kRoleAccess);
    out.access_snr = access_.mean_snr * draw_rf_fade(access_stream, access_);
    const bool access_outage =
        outage_decision(out.access_snr, access_threshold_);

    out.outage = backhaul_outage || access_outage;
    return out;
}

E2eSample e2e_sample(const Topology& topology, const Scenario& scenario,
                     double ue_x_m, const TrialStream& trial) {
    return CompiledPath(topology, scenario, ue_x_m).sample(trial);
}

bool recompute_outage(const Topology& topology, const Scenario& scenario,
                      const E2eSample& sample) {
    bool chain_outage = false;
    for (std::size_t i = 0; i < sample.chain_snr.size(); ++i) {
        chain_outage = chain_outage ||
                       outage_decision(sample.chain_snr[i],
                                       topology.hops[i].threshold_snr);
    }
    bool backhaul_outage = chain_outage;
    if (sample.bypass_snr) {
        backhaul_outage =
            chain_outage && outage_decision(*sample.bypass_snr,
                                            topology.direct_bypass->threshold_snr);
    }
    const bool access_outage = outage_decision(
        sample.access_snr, ue_threshold_snr(scenario.service.rate_per_ue));
    return backhaul_outage || access_outage;
}

} // namespace fsothz
