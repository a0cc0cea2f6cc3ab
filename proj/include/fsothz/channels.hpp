#pragma once

// Fading channel models and their samplers.
//
//   - Gamma-Gamma irradiance for optical turbulence (unit mean), with shape
//     parameters either configured directly or derived from the refractive
//     index structure constant via the Rytov variance.
//   - alpha-mu envelope fading for the sub-THz radio leg (Nakagami-m and
//     Rayleigh as special cases), normalized so E[R^alpha] = 1.
//   - Misalignment (pointing) loss: Rayleigh-distributed radial jitter through
//     a Gaussian beam, in the equivalent-beamwidth approximation.
//
// All samplers draw from a caller-supplied Xoshiro256pp stream and consume a
// variable number of uniforms (rejection sampling); callers that need paired
// draws across arms must use separate substreams per role, not interleaved
// draws from one stream.

#include "fsothz/rng.hpp"

namespace fsothz {

struct GammaGammaShapes {
    double alpha;
    double beta;
};

// Rytov variance for a plane wave over a horizontal path.
double rytov_variance(double cn2, double wavelength_m, double distance_m);

// Large- and small-scale scintillation shapes from the Rytov variance.
GammaGammaShapes shapes_from_rytov(double rytov_var);

// Convenience: shapes for a path described by (cn2, wavelength, distance).
GammaGammaShapes shapes_from_path(double cn2, double wavelength_m,
                                  double distance_m);

// Scintillation index of a Gamma-Gamma variate: Var[I]/E[I]^2 for unit mean.
double gg_scintillation_index(double alpha, double beta);

// Second moment of the unit-mean Gamma-Gamma irradiance.
double gg_second_moment(double alpha, double beta);

// Second moment E[R^2] of the alpha-mu envelope normalized to E[R^alpha] = 1.
double alpha_mu_mean_square(double alpha, double mu);

// Gamma(shape, scale) via Marsaglia-Tsang squeeze; shape may be < 1.
double sample_gamma(Xoshiro256pp& rng, double shape, double scale);

// Standard normal via Box-Muller (one variate per call, no caching).
double sample_normal(Xoshiro256pp& rng);

// Unit-mean Gamma-Gamma irradiance: product of two independent unit-mean
// Gamma variates with shapes alpha and beta.
double sample_gamma_gamma(Xoshiro256pp& rng, double alpha, double beta);

// alpha-mu envelope R with E[R^alpha] = 1.
double sample_alpha_mu(Xoshiro256pp& rng, double alpha, double mu);

// Nakagami-m envelope with E[R^2] = omega (alpha-mu with alpha = 2, mu = m).
double sample_nakagami(Xoshiro256pp& rng, double m, double omega);

// Geometry constants of the misalignment model for a circular aperture of
// radius r behind a Gaussian beam of width w:
//   a0        peak collected fraction at zero offset
//   w_eq_sq   squared equivalent beamwidth
//   xi        w_eq / (2 sigma_jitter), the jitter severity ratio
struct PointingGeometry {
    double a0;
    double w_eq_sq;
    double xi;
};

PointingGeometry pointing_geometry(double receiver_radius_m, double beamwidth_m,
                                   double jitter_sigma_m);

// Pointing loss factor hp in (0, a0]: Rayleigh radial offset with scale
// jitter_sigma through the equivalent Gaussian profile. The distribution
// function is F(h) = (h / a0)^(xi^2) on (0, a0].
double sample_pointing(Xoshiro256pp& rng, const PointingGeometry& geometry,
                       double jitter_sigma_m);

} // namespace fsothz
