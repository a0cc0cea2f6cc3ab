#pragma once

// Scenario parameter set: every physical and service constant a study needs,
// with defaults matching the baseline parameter table. Scenarios load from a
// flat "key = value" text format and serialize back canonically (sorted keys,
// shortest round-trip floats), so a serialized scenario is a stable fingerprint
// of the run configuration.

#include <cstdint>
#include <string>

namespace fsothz {

struct FsoLinkParams {
    double wavelength_m = 1550e-9;
    double cn2 = 1e-12;             // refractive index structure constant
    double alpha_f = 4.343;         // turbulence shapes at the reference hop
    double beta_f = 2.492;
    double conversion_coeff = 1.0;  // optical-to-electrical conversion
    double receiver_radius_m = 0.20;
    double beamwidth_m = 0.40;
    double jitter_sigma_m = 0.05;
    double visibility_km = 10.0;
};

struct SubThzLinkParams {
    double frequency_hz = 119e9;
    double tx_gain_db = 55.0;
    double rx_gain_db = 55.0;
    double alpha = 2.0;             // envelope fading shape pair
    double mu = 3.0;
    int n_tx = 2;
    int n_rx = 2;
    double receiver_radius_m = 0.20;
    double beamwidth_m = 0.50;
    double jitter_sigma_m = 0.06;
};

struct MmWaveLinkParams {
    double frequency_hz = 30e9;
    double tx_gain_db = 40.0;
    double rx_gain_db = 40.0;
    double oxygen_db_per_km = 15.1;
    double rain_db_per_km = 0.0;
    double m = 1.0;                 // Nakagami shape
    int n_tx = 2;
    int n_rx = 2;
    double tx_snr_db = 25.0;        // access-link transmit SNR
};

struct Atmosphere {
    double pressure_pa = 101325.0;
    double temperature_k = 298.0;
    double humidity = 0.5;          // relative, 0..1
};

struct Geometry {
    double node_height_m = 60.0;
    double ue_height_m = 0.0;
    double hop_length_m = 200.0;    // backhaul hop spacing
};

struct ServiceParams {
    int ues_per_node = 10;
    double rate_per_ue = 0.1;       // bit/s/Hz demanded per user
    double tx_snr_db = 30.0;        // backhaul transmit SNR
};

// Switching thresholds in dB as configured; converted to linear SNR where the
// decision logic runs.
struct SwitchThresholdsDb {
    double fso_upper_db = 6.0;
    double fso_lower_db = 4.0;
    double subthz_db = 5.0;
};

struct Scenario {
    FsoLinkParams fso;
    SubThzLinkParams subthz;
    MmWaveLinkParams mmwave;
    Atmosphere atmosphere;
    Geometry geometry;
    ServiceParams service;
    SwitchThresholdsDb switching;
};

// Baseline scenario (the defaults above, spelled out for call sites).
Scenario table_defaults();

// Parses "key = value" lines. '#' starts a comment, blank lines are skipped,
// keys are dotted paths like "fso.cn2". Unknown keys, duplicate keys, and
// malformed values raise ConfigError; the result is validated before return.
Scenario parse_scenario(const std::string& text);

// parse_scenario over a file's contents. Missing/unreadable files raise
// ConfigError with the path as the key.
Scenario load_scenario_file(const std::string& path);

// Canonical text form: one "key = value" line per field, sorted by key, with
// round-trip float formatting. parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

// Range and consistency checks. Raises ConfigError naming the violating key.
void validate_scenario(const Scenario& scenario);

// Applies one "key=value" override on top of an existing scenario.
void apply_override(Scenario& scenario, const std::string& assignment);

// Aggregate rate threshold for a node serving `ues` users at `rate_per_ue`
// each: the SNR below which the shared hop cannot carry the summed demand.
double node_threshold_snr(int ues, double rate_per_ue);

// Per-user access threshold: SNR needed for one user's demanded rate.
double ue_threshold_snr(double rate_per_ue);

} // namespace fsothz
