#pragma once

// Backhaul topology modes, UE association, and decode-and-forward end-to-end
// outage sampling.
//
// Deployment geometry: donor at x = 0 with relay nodes spaced one hop length
// apart along the street axis, all at the same mast height; the UE moves on
// the ground. Seven modes cover the deployment comparison set:
//
//   1  donor only, direct access everywhere
//   2  donor -> N1 -> N2 relay chain, hybrid hops, nearest-node handover
//   3  like 2 but the chain is radio-only, with a parallel direct optical
//      donor -> N2 bypass; N2 is backhauled if either branch survives
//   4  donor and N2 only, one double-length hybrid hop, handover at midspan
//   5  always served by N1 over a hybrid hop
//   6  always served by N1 over a radio-only hop
//   7  always served by N2 over a double-length hybrid hop
//
// A hop is in outage when its effective SNR falls below the receiving node's
// aggregate-load threshold; end-to-end outage is the union of hop outages on
// the serving path plus the access-link outage.

#include <cstdint>
#include <optional>
#include <vector>

#include "fsothz/hybrid.hpp"
#include "fsothz/linkbudget.hpp"
#include "fsothz/scenario.hpp"

namespace fsothz {

enum class HopStrategy { kSingle, kHard, kSoft, kMrc };

struct NodeSpec {
    double x_m = 0.0;
    int ues_served = 0;
};

struct HopSpec {
    int from_node = 0;
    int to_node = 0;
    double length_m = 0.0;
    bool has_fso = false;
    bool has_subthz = false;
    HopStrategy strategy = HopStrategy::kHard;
    double threshold_snr = 0.0;   // receiving node's aggregate threshold
};

struct Topology {
    int mode = 0;
    std::vector<NodeSpec> nodes;
    std::vector<HopSpec> hops;              // chain order, donor outward
    std::optional<HopSpec> direct_bypass;   // mode 3's optical branch
    int fixed_serving_node = -1;            // -1 enables nearest-node handover
};

Topology build_mode(int mode, const Scenario& scenario);

// Serving node for a UE at ground position x. Handover modes pick the node
// with the best mean access SNR, which for identical access parameters is
// the smallest 3-D slant distance; ties break to the lower node index.
int associate_ue(const Topology& topology, double ue_x_m);

// One end-to-end channel realization. chain_snr holds the effective SNR of
// each traversed hop in chain order; bypass_snr is set only when the
// topology has the parallel optical branch and the serving path uses it.
struct E2eSample {
    std::vector<double> chain_snr;
    std::optional<double> bypass_snr;
    double access_snr = 0.0;
    int serving_node = 0;
    bool outage = false;
};

// Evaluates outage from the SNRs stored in a sample against the topology's
// thresholds; e2e_sample's flag always equals this recomputation.
bool recompute_outage(const Topology& topology, const Scenario& scenario,
                      const E2eSample& sample);

// Topology + scenario compiled for a fixed UE position: resolved link models
// and thresholds for every hop on the serving path and for the access link.
// Building one costs a few special-function calls, so sweeps compile once
// per axis point and then sample in a tight loop.
class CompiledPath {
public:
    CompiledPath(const Topology& topology, const Scenario& scenario,
                 double ue_x_m);

    E2eSample sample(const TrialStream& trial) const;

    int serving_node() const noexcept { return serving_node_; }
    double access_distance_m() const noexcept { return access_distance_m_; }

private:
    struct CompiledHop {
        bool has_fso = false;
        bool has_subthz = false;
        HopStrategy strategy = HopStrategy::kHard;
        double threshold_snr = 0.0;
        std::uint32_t fso_role = 0;
        std::uint32_t subthz_role = 0;
        FsoLinkModel fso{};
        RfLinkModel subthz{};
    };

    double hop_effective_snr(const CompiledHop& hop, const TrialStream& trial,
                             double* fso_snr, double* subthz_snr) const;

    std::vector<CompiledHop> chain_;
    std::optional<CompiledHop> bypass_;
    RfLinkModel access_{};
    SwitchThresholds switching_{};
    double access_threshold_ = 0.0;
    int serving_node_ = 0;
    double access_distance_m_ = 0.0;
};

// Convenience wrapper: compile, draw one sample. Sweeps use CompiledPath.
E2eSample e2e_sample(const Topology& topology, const Scenario& scenario,
                     double ue_x_m, const TrialStream& trial);

} // namespace fsothz
