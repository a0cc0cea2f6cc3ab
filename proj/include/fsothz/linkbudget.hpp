#pragma once

// Link budgets: deterministic path gains per technology, plus the composition
// of transmit SNR, path gain, and fading state into an instantaneous SNR.
//
// The optical leg models intensity modulation with direct detection: received
// electrical SNR goes with the square of collected optical power, so the mean
// electrical SNR is (transmit SNR x optical path gain)^2 and the fading enters
// squared as well. Radio legs (sub-THz, mmWave) are linear in received power
// with maximal-ratio combining over n_tx x n_rx single-fading paths.

#include <vector>

#include "fsothz/channels.hpp"
#include "fsothz/scenario.hpp"

namespace fsothz {

enum class LinkTech { kFso, kSubThz, kMmWave };

// Specific attenuation (dB/km) from molecular absorption: a compact
// line-by-line model with the two oxygen features (60 GHz band collapsed to
// one effective line, 118.75 GHz) and the 22.2 / 183.3 GHz water lines.
// Valid up to 450 GHz; raises ParameterError beyond that.
double gas_attenuation_db_per_km(double frequency_hz, const Atmosphere& atm);

// Kim-model scattering coefficient (1/km) at the given visibility.
double kim_scatter_coeff_per_km(double visibility_km, double wavelength_m);

// Optical power path gain in (0, 1]: Beer-Lambert extinction with the Kim
// scattering coefficient. Geometric spreading is carried by the pointing
// model, not here.
double fso_path_gain(double visibility_km, double wavelength_m,
                     double distance_m);

// Sub-THz power path gain: free-space path loss, antenna gains at both ends,
// and molecular absorption over the path. Distances below 1 m and carriers
// above 450 GHz are outside the model and raise ParameterError.
double subthz_path_gain(double frequency_hz, double distance_m,
                        double tx_gain_db, double rx_gain_db,
                        const Atmosphere& atm);

// mmWave power path gain: free-space path loss, antenna gains, and fixed
// oxygen/rain specific attenuations.
double mmwave_path_gain(double frequency_hz, double distance_m,
                        double tx_gain_db, double rx_gain_db,
                        double oxygen_db_per_km, double rain_db_per_km);

// Mean-SNR budget of one link. For kFso the stored mean is already the
// squared composition; instantaneous_snr applies the fading state on top.
struct LinkBudget {
    LinkTech technology = LinkTech::kSubThz;
    double mean_snr = 0.0;          // linear
    double conversion_coeff = 1.0;  // optical-electrical conversion, kFso only
};

LinkBudget make_fso_budget(double tx_snr_db, double path_gain,
                           double conversion_coeff);
LinkBudget make_rf_budget(LinkTech technology, double tx_snr_db,
                          double path_gain);

enum class Combining { kSingle, kMrc };

// One realization of a link's random state: fading envelopes per combining
// path and a common pointing loss factor (1.0 where misalignment is absent).
struct ChannelDraw {
    std::vector<double> envelopes;
    double pointing = 1.0;
};

// Instantaneous SNR for a draw under the given budget.
//   kFso:    mean * (conversion * I * hp)^2 with the single envelope as I
//   radio:   mean * hp^2 * sum(envelope^2) over the combined paths
// kSingle requires exactly one envelope; kMrc sums all of them.
double instantaneous_snr(const LinkBudget& budget, const ChannelDraw& draw,
                         Combining combining);

// Fully resolved simulation model of one optical link: fading shapes,
// misalignment geometry, and the composed mean SNR.
struct FsoLinkModel {
    double alpha = 0.0;
    double beta = 0.0;
    PointingGeometry geometry{};
    double jitter_sigma_m = 0.0;
    double conversion_coeff = 1.0;
    double mean_snr = 0.0;
};

// Same for a radio link; has_pointing is false on the access link, whose
// misalignment is absorbed into beamforming.
struct RfLinkModel {
    double alpha = 2.0;
    double mu = 1.0;
    int paths = 1;
    bool has_pointing = false;
    PointingGeometry geometry{};
    double jitter_sigma_m = 0.0;
    double mean_snr = 0.0;
};

// Resolves the optical hop model at a given length. The configured shape pair
// applies at the reference hop length (within half a meter); other lengths
// derive shapes from cn2 through the Rytov variance.
FsoLinkModel resolve_fso_link(const Scenario& scenario, double distance_m);

// Resolves the sub-THz hop model at a given length.
RfLinkModel resolve_subthz_link(const Scenario& scenario, double distance_m);

// Resolves the mmWave access model at a given slant distance.
RfLinkModel resolve_access_link(const Scenario& scenario, double distance_m);

// Draws the squared-fading factor of an optical link: (conversion * I * hp)^2.
// Instantaneous SNR is mean_snr times this factor.
double draw_fso_fade(Xoshiro256pp& rng, const FsoLinkModel& link);

// Draws the fading factor of a radio link: hp^2 * sum of squared envelopes.
double draw_rf_fade(Xoshiro256pp& rng, const RfLinkModel& link);

} // namespace fsothz
