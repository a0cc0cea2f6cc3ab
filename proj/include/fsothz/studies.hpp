#pragma once

// The four named figure studies, each a (scenario overrides, sweep spec)
// bundle on top of a base scenario:
//
//   distance    end-to-end outage vs UE position, modes 1..7
//   power       hop outage vs backhaul transmit SNR, five receiver strategies
//   visibility  hop ergodic rate vs meteorological visibility
//   beamwidth   hop outage vs beamwidth at 200 m and 400 m, narrow-beam
//               geometry (receiver radius 0.1 m, jitter 0.12 m)
//
// Study names double as CLI subcommand suffixes and manifest identifiers.

#include <string>
#include <vector>

#include "fsothz/montecarlo.hpp"
#include "fsothz/scenario.hpp"

namespace fsothz {

struct Study {
    std::string name;
    Scenario scenario;
    SweepSpec spec;
};

// Builds a named study ("fig2-distance", "fig3-power", "fig4-visibility",
// "fig5-beamwidth") from a base scenario. Zero trials keeps the study's
// default trial count; an empty strategy list keeps the full default set.
Study make_study(const std::string& name, const Scenario& base,
                 std::uint64_t trials, std::uint64_t seed, unsigned workers,
                 const std::vector<std::string>& strategies);

// All study names in figure order.
const std::vector<std::string>& study_names();

} // namespace fsothz
