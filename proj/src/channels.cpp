#include "fsothz/channels.hpp"

#include <cmath>

#include "fsothz/errors.hpp"

namespace fsothz {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive(double value, const char* what) {
    if (!(value > 0) || !std::isfinite(value)) {
        throw ParameterError(std::string(what) + " must be positive and finite");
    }
}

// Marsaglia-Tsang for shape >= 1; callers below handle the boost for < 1.
double gamma_core(Xoshiro256pp& rng, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

} // namespace

double rytov_variance(double cn2, double wavelength_m, double distance_m) {
    require_positive(cn2, "cn2");
    require_positive(wavelength_m, "wavelength");
    require_positive(distance_m, "distance");
    const double k = 2.0 * kPi / wavelength_m;
    return 1.23 * cn2 * std::pow(k, 7.0 / 6.0) * std::pow(distance_m, 11.0 / 6.0);
}

GammaGammaShapes shapes_from_rytov(double rytov_var) {
    require_positive(rytov_var, "rytov variance");
    const double s = rytov_var;
    const double s65 = std::pow(s, 6.0 / 5.0);
    const double alpha =
        1.0 / (std::exp(0.49 * s / std::pow(1.0 + 1.11 * s65, 7.0 / 6.0)) - 1.0);
    const double beta =
        1.0 / (std::exp(0.51 * s / std::pow(1.0 + 0.69 * s65, 5.0 / 6.0)) - 1.0);
    return {alpha, beta};
}

GammaGammaShapes shapes_from_path(double cn2, double wavelength_m,
                                  double distance_m) {
    return shapes_from_rytov(rytov_variance(cn2, wavelength_m, distance_m));
}

double gg_scintillation_index(double alpha, double beta) {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    return 1.0 / alpha + 1.0 / beta + 1.0 / (alpha * beta);
}

double gg_second_moment(double alpha, double beta) {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    return (1.0 + 1.0 / alpha) * (1.0 + 1.0 / beta);
}

double alpha_mu_mean_square(double alpha, double mu) {
    require_positive(alpha, "alpha");
    require_positive(mu, "mu");
    return std::exp(std::lgamma(mu + 2.0 / alpha) - std::lgamma(mu) -
                    (2.0 / alpha) * std::log(mu));
}

double sample_normal(Xoshiro256pp& rng) {
    const double u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double sample_gamma(Xoshiro256pp& rng, double shape, double scale) {
    require_positive(shape, "gamma shape");
    require_positive(scale, "gamma scale");
    if (shape < 1.0) {
        // Johnk-style boost: Gamma(a) = Gamma(a+1) * U^(1/a).
        const double boost = std::pow(rng.uniform01(), 1.0 / shape);
        return gamma_core(rng, shape + 1.0) * boost * scale;
    }
    return gamma_core(rng, shape) * scale;
}

double sample_gamma_gamma(Xoshiro256pp& rng, double alpha, double beta) {
    // Large-scale factor first, then small-scale; both unit mean.
    const double x = sample_gamma(rng, alpha, 1.0 / alpha);
    const double y = sample_gamma(rng, beta, 1.0 / beta);
    return x * y;
}

double sample_alpha_mu(Xoshiro256pp& rng, double alpha, double mu) {
    require_positive(alpha, "alpha");
    const double power = sample_gamma(rng, mu, 1.0 / mu);
    return std::pow(power, 1.0 / alpha);
}

double sample_nakagami(Xoshiro256pp& rng, double m, double omega) {
    if (!(m >= 0.5)) {
        throw ParameterError("nakagami shape m must be at least 0.5");
    }
    require_positive(omega, "nakagami spread omega");
    return std::sqrt(sample_gamma(rng, m, omega / m));
}

PointingGeometry pointing_geometry(double receiver_radius_m, double beamwidth_m,
                                   double jitter_sigma_m) {
    require_positive(receiver_radius_m, "receiver radius");
    require_positive(beamwidth_m, "beamwidth");
    require_positive(jitter_sigma_m, "jitter sigma");
    const double v = std::sqrt(kPi / 2.0) * receiver_radius_m / beamwidth_m;
    const double erf_v = std::erf(v);
    const double a0 = erf_v * erf_v;
    const double w_eq_sq = beamwidth_m * beamwidth_m * std::sqrt(kPi) * erf_v /
                           (2.0 * v * std::exp(-v * v));
    const double xi = std::sqrt(w_eq_sq) / (2.0 * jitter_sigma_m);
    return {a0, w_eq_sq, xi};
}

double sample_pointing(Xoshiro256pp& rng, const PointingGeometry& geometry,
                       double jitter_sigma_m) {
    require_positive(jitter_sigma_m, "jitter sigma");
    const double u = rng.uniform01();
    const double r_sq = jitter_sigma_m * jitter_sigma_m * (-2.0 * std::log(u));
    return geometry.a0 * std::exp(-2.0 * r_sq / geometry.w_eq_sq);
}

} // namespace fsothz
