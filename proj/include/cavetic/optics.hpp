#pragma once

// Cavity and Gaussian-beam geometry for symmetric two-mirror resonators.
//
// Coordinates: the optical axis is z, with the cavity center at z = 0 and the
// mirrors at z = +-L/2. All lengths are SI meters.

#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace cavetic {

struct OpticalConstants
{
    double wavelength = 780e-9;
    double light_speed = 299792458.0;

    [[nodiscard]] double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

    void validate() const
    {
        if (!(wavelength > 0.0))
            throw DomainError("wavelength must be positive");
        if (!(light_speed > 0.0))
            throw DomainError("light speed must be positive");
    }
};

struct CavityGeometry
{
    double mirror_roc = 0.0;          ///< R
    double length = 0.0;              ///< L
    double aperture_radius = 0.0;     ///< a
    double mirror_reflectivity = 0.0; ///< power reflectivity of each mirror

    /// Distance short of the concentric length, d = 2R - L.
    [[nodiscard]] double concentric_gap() const { return 2.0 * mirror_roc - length; }

    static CavityGeometry from_gap(double roc, double gap, double aperture, double reflectivity)
    {
        return {roc, 2.0 * roc - gap, aperture, reflectivity};
    }

    [[nodiscard]] bool stable() const { return length > 0.0 && length < 2.0 * mirror_roc; }

    void validate() const
    {
        if (!(mirror_roc > 0.0))
            throw DomainError("mirror radius of curvature must be positive");
        if (!stable())
            throw DomainError("cavity length must satisfy 0 < L < 2R");
        if (!(aperture_radius > 0.0))
            throw DomainError("aperture radius must be positive");
        if (!(mirror_reflectivity > 0.0 && mirror_reflectivity < 1.0))
            throw DomainError("mirror reflectivity must lie in (0, 1)");
    }
};

/// Wavefront curvature radius reported at the beam waist (flat wavefront).
inline constexpr double flat_wavefront = std::numeric_limits<double>::infinity();

struct BeamState
{
    double radius = 0.0;           ///< w(z), 1/e^2 intensity radius
    double curvature_radius = 0.0; ///< R(z); +-flat_wavefront at the waist
    double gouy_phase = 0.0;       ///< arctan((z - z0)/z_R)

    [[nodiscard]] bool flat() const { return std::isinf(curvature_radius); }
};

struct BeamGeometry
{
    double waist_radius = 0.0;
    double waist_position = 0.0;
    double rayleigh_range = 0.0;
    double wavelength = 780e-9;

    static BeamGeometry from_waist(double w0, double z0, const OpticalConstants &constants)
    {
        if (!(w0 > 0.0))
            throw DomainError("beam waist must be positive");
        return {w0, z0, std::numbers::pi * w0 * w0 / constants.wavelength, constants.wavelength};
    }

    [[nodiscard]] double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }
};

inline BeamState beam_at(const BeamGeometry &beam, double z)
{
    const double dz = z - beam.waist_position;
    const double zr = beam.rayleigh_range;
    const double ratio = dz / zr;
    BeamState s;
    s.radius = beam.waist_radius * std::sqrt(1.0 + ratio * ratio);
    s.gouy_phase = std::atan(ratio);
    if (dz == 0.0)
        s.curvature_radius = std::copysign(flat_wavefront, dz);
    else
        s.curvature_radius = dz * (1.0 + (zr / dz) * (zr / dz));
    return s;
}

/// Lowest-order mode of the symmetric resonator; waist at the cavity center.
inline BeamGeometry fundamental_mode(const CavityGeometry &geometry, const OpticalConstants &constants)
{
    if (!geometry.stable())
        throw DomainError("unstable cavity: fundamental mode requires 0 < L < 2R");
    const double half = 0.5 * geometry.length;
    // R - L/2 = d/2 is formed from the gap to keep precision near concentric.
    const double zr = std::sqrt(half * (0.5 * geometry.concentric_gap()));
    const double w0 = std::sqrt(constants.wavelength * zr / std::numbers::pi);
    return {w0, 0.0, zr, constants.wavelength};
}

inline double mirror_spot_size(const CavityGeometry &geometry, const OpticalConstants &constants)
{
    return beam_at(fundamental_mode(geometry, constants), 0.5 * geometry.length).radius;
}

inline double focusing_parameter(double w_mirror, double length)
{
    if (!(w_mirror > 0.0) || !(length > 0.0))
        throw DomainError("focusing parameter needs positive spot size and length");
    return 2.0 * w_mirror / length;
}

inline double free_spectral_range(const CavityGeometry &geometry, const OpticalConstants &constants)
{
    if (!(geometry.length > 0.0))
        throw DomainError("cavity length must be positive");
    return constants.light_speed / (2.0 * geometry.length);
}

namespace detail {

// u(g) on the near-concentric branch, g = R - L/2 = d/2 in (0, R/4]. There
// w_mirror^2 = (lambda R / pi) sqrt(h/g) with h = L/2, and u = w_mirror / h.
inline double u_of_half_gap(double roc, double g, double wavelength)
{
    const double h = roc - g;
    return std::sqrt(wavelength * roc / std::numbers::pi / (std::pow(h, 1.5) * std::sqrt(g)));
}

} // namespace detail

/// Smallest focusing parameter reachable on the near-concentric branch
/// (attained at L = 3R/2; u grows monotonically as L -> 2R from there).
inline double min_focusing_parameter(double roc, const OpticalConstants &constants)
{
    return detail::u_of_half_gap(roc, 0.25 * roc, constants.wavelength);
}

/// Concentric gap d for which the fundamental mode has focusing parameter u.
inline double gap_for_focusing(double roc, double u, const OpticalConstants &constants)
{
    if (!(roc > 0.0))
        throw DomainError("mirror radius of curvature must be positive");
    if (!(u > 0.0))
        throw DomainError("focusing parameter must be positive");
    const double u_min = min_focusing_parameter(roc, constants);
    if (u < u_min)
        throw DomainError("focusing parameter below the near-concentric minimum");
    // Bisection in log(g); u(g) is strictly decreasing on (0, R/4].
    double lo = std::log(roc * 1e-30);
    double hi = std::log(0.25 * roc);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (detail::u_of_half_gap(roc, std::exp(mid), constants.wavelength) > u)
            lo = mid;
        else
            hi = mid;
    }
    return 2.0 * std::exp(0.5 * (lo + hi));
}

inline CavityGeometry cavity_for_focusing(double roc, double u, double aperture, double reflectivity,
                                          const OpticalConstants &constants)
{
    return CavityGeometry::from_gap(roc, gap_for_focusing(roc, u, constants), aperture, reflectivity);
}

} // namespace cavetic
