#include "fsothz/linkbudget.hpp"

#include <cmath>

#include "fsothz/errors.hpp"

namespace fsothz {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;

// Configured turbulence shapes apply at this hop length; other lengths
// derive shapes from cn2.
constexpr double kReferenceHopM = 200.0;
constexpr double kReferenceHopToleranceM = 0.5;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Van Vleck-Weisskopf line shape (GHz units throughout).
double vvw_shape(double f, double f0, double width) {
    const double below = width / ((f - f0) * (f - f0) + width * width);
    const double above = width / ((f + f0) * (f + f0) + width * width);
    return (f / f0) * (below + above);
}

double fspl_gain(double frequency_hz, double distance_m) {
    const double ratio =
        kSpeedOfLight / (4.0 * kPi * frequency_hz * distance_m);
    return ratio * ratio;
}

} // namespace

double gas_attenuation_db_per_km(double frequency_hz, const Atmosphere& atm) {
    if (!(frequency_hz > 0)) {
        throw ParameterError("gas attenuation: frequency must be positive");
    }
    if (frequency_hz > 450e9) {
        throw ParameterError(
            "gas attenuation: model is valid only up to 450 GHz");
    }
    if (!(atm.temperature_k > 0)) {
        throw ParameterError("gas attenuation: temperature must be positive");
    }

    const double f = frequency_hz / 1e9;
    const double p_total = atm.pressure_pa / 100.0;  // hPa
    const double theta = 300.0 / atm.temperature_k;

    // Buck saturation vapor pressure (hPa) -> water partial pressure.
    const double t_c = atm.temperature_k - 273.15;
    const double saturation =
        6.1121 * std::exp(17.502 * t_c / (atm.temperature_k - 32.18));
    const double e = atm.humidity * saturation;
    const double p_dry = std::max(0.0, p_total - e);

    const double theta3 = theta * theta * theta;
    const double theta35 = theta3 * std::sqrt(theta);

    double sum = 0.0;

    // Oxygen: the 60 GHz complex collapsed to one effective line, plus the
    // isolated 118.75 GHz line.
    {
        const double strength = 62933e-7 * p_dry * theta3;
        const double width =
            50.0e-4 * (p_total * std::pow(theta, 0.8) + 1.1 * e * theta);
        sum += strength * vvw_shape(f, 60.0, width);
    }
    {
        const double strength = 945.0e-7 * p_dry * theta3;
        const double width =
            16.30e-4 * (p_total * std::pow(theta, 0.8) + 1.1 * e * theta);
        sum += strength * vvw_shape(f, 118.750334, width);
    }
    // Water vapor: 22.235 and 183.31 GHz lines.
    {
        const double strength =
            0.1079e-1 * e * theta35 * std::exp(2.144 * (1.0 - theta));
        const double width = 26.38e-4 * (p_total * std::pow(theta, 0.76) +
                                         5.087 * e * theta);
        sum += strength * vvw_shape(f, 22.235080, width);
    }
    {
        const double strength =
            2.273e-1 * e * theta35 * std::exp(0.668 * (1.0 - theta));
        const double width = 28.35e-4 * (p_total * std::pow(theta, 0.626) +
                                         4.74 * e * std::pow(theta, 1.09));
        sum += strength * vvw_shape(f, 183.310087, width);
    }

    return 0.1820 * f * sum;
}

double kim_scatter_coeff_per_km(double visibility_km, double wavelength_m) {
    if (!(visibility_km > 0)) {
        throw ParameterError("kim model: visibility must be positive");
    }
    if (!(wavelength_m > 0)) {
        throw ParameterError("kim model: wavelength must be positive");
    }
    double q;
    if (visibility_km > 50.0) {
        q = 1.6;
    } else if (visibility_km > 6.0) {
        q = 1.3;
    } else if (visibility_km > 1.0) {
        q = 0.16 * visibility_km + 0.34;
    } else if (visibility_km > 0.5) {
        q = visibility_km - 0.5;
    } else {
        q = 0.0;
    }
    return (3.91 / visibility_km) * std::pow(wavelength_m / 550e-9, -q);
}

double fso_path_gain(double visibility_km, double wavelength_m,
                     double distance_m) {
    if (!(distance_m > 0)) {
        throw ParameterError("fso path gain: distance must be positive");
    }
    const double sigma = kim_scatter_coeff_per_km(visibility_km, wavelength_m);
    return std::exp(-sigma * distance_m / 1000.0);
}

double subthz_path_gain(double frequency_hz, double distance_m,
                        double tx_gain_db, double rx_gain_db,
                        const Atmosphere& atm) {
    if (!(distance_m >= 1.0)) {
        throw ParameterError(
            "subthz path gain: distance must be at least 1 m (far field)");
    }
    const double kappa = gas_attenuation_db_per_km(frequency_hz, atm);
    return db_to_linear(tx_gain_db + rx_gain_db) *
           fspl_gain(frequency_hz, distance_m) *
           db_to_linear(-kappa * distance_m / 1000.0);
}

double mmwave_path_gain(double frequency_hz, double distance_m,
                        double tx_gain_db, double rx_gain_db,
                        double oxygen_db_per_km, double rain_db_per_km) {
    if (!(frequency_hz > 0)) {
        throw ParameterError("mmwave path gain: frequency must be positive");
    }
    if (!(distance_m >= 1.0)) {
        throw ParameterError(
            "mmwave path gain: distance must be at least 1 m (far field)");
    }
    const double loss_db =
        (oxygen_db_per_km + rain_db_per_km) * distance_m / 1000.0;
    return db_to_linear(tx_gain_db + rx_gain_db - loss_db) *
           fspl_gain(frequency_hz, distance_m);
}

LinkBudget make_fso_budget(double tx_snr_db, double path_gain,
                           double conversion_coeff) {
    if (!(path_gain > 0)) {
        throw ParameterError("fso budget: path gain must be positive");
    }
    const double optical = db_to_linear(tx_snr_db) * path_gain;
    LinkBudget budget;
    budget.technology = LinkTech::kFso;
    budget.mean_snr = optical * optical;
    budget.conversion_coeff = conversion_coeff;
    return budget;
}

LinkBudget make_rf_budget(LinkTech technology, double tx_snr_db,
                          double path_gain) {
    if (technology == LinkTech::kFso) {
        throw ParameterError("rf budget: technology must be a radio link");
    }
    if (!(path_gain > 0)) {
        throw ParameterError("rf budget: path gain must be positive");
    }
    LinkBudget budget;
    budget.technology = technology;
    budget.mean_snr = db_to_linear(tx_snr_db) * path_gain;
    return budget;
}

double instantaneous_snr(const LinkBudget& budget, const ChannelDraw& draw,
                         Combining combining) {
    if (draw.envelopes.empty()) {
        throw ParameterError("instantaneous snr: draw has no envelopes");
    }
    if (budget.technology == LinkTech::kFso) {
        const double collected =
            budget.conversion_coeff * draw.envelopes.front() * draw.pointing;
        return budget.mean_snr * collected * collected;
    }
    double power;
    if (combining == Combining::kMrc) {
        power = 0.0;
        for (double envelope : draw.envelopes) {
            power += envelope * envelope;
        }
    } else {
        if (draw.envelopes.size() != 1) {
            throw ParameterError(
                "instantaneous snr: single combining expects one envelope");
        }
        power = draw.envelopes.front() * draw.envelopes.front();
    }
    return budget.mean_snr * draw.pointing * draw.pointing * power;
}

FsoLinkModel resolve_fso_link(const Scenario& scenario, double distance_m) {
    const FsoLinkParams& fso = scenario.fso;
    FsoLinkModel model;
    if (std::abs(distance_m - kReferenceHopM) < kReferenceHopToleranceM) {
        model.alpha = fso.alpha_f;
        model.beta = fso.beta_f;
    } else {
        const GammaGammaShapes shapes =
            shapes_from_path(fso.cn2, fso.wavelength_m, distance_m);
        model.alpha = shapes.alpha;
        model.beta = shapes.beta;
    }
    model.geometry = pointing_geometry(fso.receiver_radius_m, fso.beamwidth_m,
                                       fso.jitter_sigma_m);
    model.jitter_sigma_m = fso.jitter_sigma_m;
    model.conversion_coeff = fso.conversion_coeff;
    const double gain =
        fso_path_gain(fso.visibility_km, fso.wavelength_m, distance_m);
    model.mean_snr =
        make_fso_budget(scenario.service.tx_snr_db, gain, fso.conversion_coeff)
            .mean_snr;
    return model;
}

RfLinkModel resolve_subthz_link(const Scenario& scenario, double distance_m) {
    const SubThzLinkParams& thz = scenario.subthz;
    RfLinkModel model;
    model.alpha = thz.alpha;
    model.mu = thz.mu;
    model.paths = thz.n_tx * thz.n_rx;
    model.has_pointing = true;
    model.geometry = pointing_geometry(thz.receiver_radius_m, thz.beamwidth_m,
                                       thz.jitter_sigma_m);
    model.jitter_sigma_m = thz.jitter_sigma_m;
    const double gain =
        subthz_path_gain(thz.frequency_hz, distance_m, thz.tx_gain_db,
                         thz.rx_gain_db, scenario.atmosphere);
    model.mean_snr = db_to_linear(scenario.service.tx_snr_db) * gain;
    return model;
}

RfLinkModel resolve_access_link(const Scenario& scenario, double distance_m) {
    const MmWaveLinkParams& mmw = scenario.mmwave;
    RfLinkModel model;
    model.alpha = 2.0;
    model.mu = mmw.m;
    model.paths = mmw.n_tx * mmw.n_rx;
    model.has_pointing = false;
    const double gain =
        mmwave_path_gain(mmw.frequency_hz, distance_m, mmw.tx_gain_db,
                         mmw.rx_gain_db, mmw.oxygen_db_per_km,
                         mmw.rain_db_per_km);
    model.mean_snr = db_to_linear(mmw.tx_snr_db) * gain;
    return model;
}

double draw_fso_fade(Xoshiro256pp& rng, const FsoLinkModel& link) {
    const double irradiance = sample_gamma_gamma(rng, link.alpha, link.beta);
    const double pointing =
        sample_pointing(rng, link.geometry, link.jitter_sigma_m);
    const double collected = link.conversion_coeff * irradiance * pointing;
    return collected * collected;
}

double draw_rf_fade(Xoshiro256pp& rng, const RfLinkModel& link) {
    double power = 0.0;
    for (int path = 0; path < link.paths; ++path) {
        const double envelope = sample_alpha_mu(rng, link.alpha, link.mu);
        power += envelope * envelope;
    }
    if (link.has_pointing) {
        const double pointing =
            sample_pointing(rng, link.geometry, link.jitter_sigma_m);
        power *= pointing * pointing;
    }
    return power;
}

} // namespace fsothz
