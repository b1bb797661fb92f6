#pragma once

// Diffraction-limited loss model: round-trip power, finesse, linewidth.
//
// Linewidths are FWHM in ordinary frequency (Hz). Conversions to angular or
// half-width conventions go through the explicit helpers below.

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "lg_modes.hpp"
#include "optics.hpp"

namespace cavetic {

/// Fraction of circulating power retained after one round trip.
struct RoundTrip
{
    double rho = 0.0;

    void validate() const
    {
        if (!(rho > 0.0 && rho < 1.0))
            throw DomainError("round-trip power fraction must lie in (0, 1)");
    }
};

/// rho = rho0 (1 - exp(-2 a^2 / w^2))^2 with rho0 = R^2.
inline RoundTrip round_trip_power(double mirror_reflectivity, double aperture, double w_mirror)
{
    if (!(mirror_reflectivity > 0.0 && mirror_reflectivity < 1.0))
        throw DomainError("mirror reflectivity must lie in (0, 1)");
    if (!(aperture > 0.0) || !(w_mirror > 0.0))
        throw DomainError("aperture and mirror spot size must be positive");
    const double rho0 = mirror_reflectivity * mirror_reflectivity;
    const double enclosed = -std::expm1(-2.0 * aperture * aperture / (w_mirror * w_mirror));
    return {rho0 * enclosed * enclosed};
}

/// rho0 times a precomputed squared enclosed-power factor (see clipped_power).
inline RoundTrip round_trip_from_clipped(double mirror_reflectivity, double clipped)
{
    return {mirror_reflectivity * mirror_reflectivity * clipped};
}

/// F = pi / (2 arcsin((1 - sqrt(rho)) / (2 rho^(1/4)))).
inline double finesse(RoundTrip rt)
{
    rt.validate();
    const double arg = (1.0 - std::sqrt(rt.rho)) / (2.0 * std::sqrt(std::sqrt(rt.rho)));
    if (arg >= 1.0)
        throw DomainError("round-trip loss too high: finesse below unity (no resolvable resonance)");
    return std::numbers::pi / (2.0 * std::asin(arg));
}

/// kappa = c / (2 L F), FWHM in Hz.
inline double linewidth(const CavityGeometry &geometry, double finesse_value, const OpticalConstants &constants)
{
    if (!(finesse_value > 0.0))
        throw DomainError("finesse must be positive");
    return free_spectral_range(geometry, constants) / finesse_value;
}

inline double to_angular(double hz) { return 2.0 * std::numbers::pi * hz; }
inline double fwhm_to_hwhm(double fwhm) { return 0.5 * fwhm; }

/// Diffraction-only linewidth of the fundamental mode of `geometry`.
inline double fundamental_linewidth(const CavityGeometry &geometry, const OpticalConstants &constants)
{
    const double w = mirror_spot_size(geometry, constants);
    return linewidth(geometry, finesse(round_trip_power(geometry.mirror_reflectivity, geometry.aperture_radius, w)),
                     constants);
}

/// kappa_{l,p} using the aperture-clipped power of mode (l,p) as its round-trip loss.
inline double per_mode_linewidth(ModeIndex index, const CavityGeometry &geometry, const BeamGeometry &beam,
                                 const OpticalConstants &constants, const Tolerance &tol = {})
{
    const double clipped = clipped_power(index, beam, geometry.aperture_radius, 0.5 * geometry.length, tol);
    const double f = finesse(round_trip_from_clipped(geometry.mirror_reflectivity, clipped));
    return linewidth(geometry, f, constants);
}

} // namespace cavetic
