#pragma once

// Single-atom cavity-QED figures of merit for the hourglass mode of a
// near-concentric cavity.
//
// kappa convention: cavity linewidths elsewhere in the library are FWHM in Hz.
// Inside C = g0^2 / (kappa gamma) the linewidth enters as the angular FWHM
// 2 pi c / (2 L F), with gamma an angular decay rate. Under this convention
// C = F * R_sc(u) exactly. Using the half-width field decay rate instead would
// double C.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <ostream>
#include <vector>

#include "anaclastic.hpp"
#include "cavity_loss.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "optics.hpp"
#include "parallel.hpp"

#include <json.hpp>

namespace cavetic {

/// Multiplies an ordinary-frequency FWHM into the kappa used by C.
inline constexpr double kappa_angular_factor = 2.0 * std::numbers::pi;

struct AtomParameters
{
    double gamma = 2.0 * std::numbers::pi * 6.067e6; ///< rad/s, Rb-87 D2

    void validate() const
    {
        if (!(gamma > 0.0))
            throw DomainError("atomic decay rate must be positive");
    }
};

/// R_sc(u) = 3/(4u^3) e^{2/u^2} [Gamma(-1/4, 1/u^2) + u Gamma(1/4, 1/u^2)]^2,
/// evaluated with exponentially scaled incomplete gammas so that e^{2/u^2}
/// never overflows.
inline double scattering_ratio(double u)
{
    if (!(u > 0.0))
        throw DomainError("focusing parameter must be positive");
    const double x = 1.0 / (u * u);
    const double bracket = upper_incomplete_gamma_scaled(-0.25, x) + u * upper_incomplete_gamma_scaled(0.25, x);
    return 3.0 / (4.0 * u * u * u) * bracket * bracket;
}

/// g0 = sqrt(pi gamma c R_sc(u) / L), rad/s.
inline double coupling_strength(double u, const CavityGeometry &geometry, const AtomParameters &atom,
                                const OpticalConstants &constants)
{
    atom.validate();
    if (!(geometry.length > 0.0))
        throw DomainError("cavity length must be positive");
    return std::sqrt(std::numbers::pi * atom.gamma * constants.light_speed * scattering_ratio(u) / geometry.length);
}

/// V_eff = 3 lambda^2 L / (4 pi R_sc(u)), in units of lambda^3.
inline double effective_mode_volume(double u, double length, double wavelength)
{
    return 3.0 * length / (4.0 * std::numbers::pi * wavelength * scattering_ratio(u));
}

struct CqedPoint
{
    double u = 0.0;
    double scattering_ratio = 0.0;
    double g0 = 0.0;            ///< rad/s
    double kappa = 0.0;         ///< rad/s, angular FWHM
    double cooperativity = 0.0; ///< g0^2 / (kappa gamma)
    double mode_volume = 0.0;   ///< lambda^3
    double finesse = 0.0;
    double length = 0.0;        ///< m
};

/// Figures of merit at u with the diffraction-only loss model, for a symmetric
/// cavity of spherical mirrors.
inline CqedPoint cqed_point(double mirror_roc, double reflectivity, double aperture, double u,
                            const AtomParameters &atom, const OpticalConstants &constants)
{
    const CavityGeometry geometry = cavity_for_focusing(mirror_roc, u, aperture, reflectivity, constants);
    const double w = 0.5 * u * geometry.length;
    if (!(w < aperture))
        throw DomainError("mirror spot size must be smaller than the aperture (u too large)");
    CqedPoint pt;
    pt.u = u;
    pt.length = geometry.length;
    pt.scattering_ratio = scattering_ratio(u);
    pt.finesse = finesse(round_trip_power(reflectivity, aperture, w));
    pt.kappa = kappa_angular_factor * linewidth(geometry, pt.finesse, constants);
    pt.g0 = coupling_strength(u, geometry, atom, constants);
    pt.cooperativity = pt.g0 * pt.g0 / (pt.kappa * atom.gamma);
    pt.mode_volume = effective_mode_volume(u, geometry.length, constants.wavelength);
    return pt;
}

inline CqedPoint cqed_point(const AnaclasticPrescription &pres, double aperture, double u, const AtomParameters &atom,
                            const OpticalConstants &constants)
{
    return cqed_point(pres.mirror_roc, pres.mirror_reflectivity, aperture, u, atom, constants);
}

struct CooperativityCurve
{
    std::vector<CqedPoint> points;
    std::size_t best = 0;          ///< index of the largest C
    bool best_on_boundary = false; ///< maximum at the first or last sweep point
};

inline CooperativityCurve cooperativity_curve(double mirror_roc, double reflectivity, double aperture,
                                              const std::vector<double> &us, const AtomParameters &atom,
                                              const OpticalConstants &constants, std::size_t jobs = 1)
{
    if (us.empty())
        throw DomainError("cooperativity sweep is empty");
    CooperativityCurve c;
    c.points.resize(us.size());
    parallel_for(us.size(), jobs, [&](std::size_t i) {
        c.points[i] = cqed_point(mirror_roc, reflectivity, aperture, us[i], atom, constants);
    });
    for (std::size_t i = 1; i < c.points.size(); ++i)
        if (c.points[i].cooperativity > c.points[c.best].cooperativity)
            c.best = i;
    c.best_on_boundary = c.points.size() > 1 && (c.best == 0 || c.best + 1 == c.points.size());
    return c;
}

inline CooperativityCurve cooperativity_curve(const AnaclasticPrescription &pres, double aperture,
                                              const std::vector<double> &us, const AtomParameters &atom,
                                              const OpticalConstants &constants, std::size_t jobs = 1)
{
    return cooperativity_curve(pres.mirror_roc, pres.mirror_reflectivity, aperture, us, atom, constants, jobs);
}

/// Golden-section maximum of `objective` on [lo, hi] to |du| < tol. A coarse
/// scan first checks that the maximum is interior.
inline double optimize_u(const std::function<double(double)> &objective, double lo, double hi, double tol = 1e-4)
{
    if (!(hi > lo))
        throw BracketError("optimization bracket must satisfy lo < hi");
    constexpr int scan = 64;
    std::size_t best = 0;
    std::vector<double> values(scan + 1);
    for (int i = 0; i <= scan; ++i) {
        values[i] = objective(lo + (hi - lo) * i / scan);
        if (values[i] > values[best])
            best = static_cast<std::size_t>(i);
    }
    if (best == 0 || best == scan)
        throw BracketError("no interior maximum in the optimization bracket");
    const double step = (hi - lo) / scan;
    const double a = lo + (static_cast<double>(best) - 1.0) * step;
    const double b = lo + (static_cast<double>(best) + 1.0) * step;
    return golden_section_max(objective, a, b, 0.5 * tol);
}

inline double optimize_u(const AnaclasticPrescription &pres, double aperture, const AtomParameters &atom,
                         double lo, double hi, const OpticalConstants &constants, double tol = 1e-4)
{
    return optimize_u([&](double u) { return cqed_point(pres, aperture, u, atom, constants).cooperativity; }, lo,
                      hi, tol);
}

inline void to_json(nlohmann::json &j, const CqedPoint &p)
{
    j = nlohmann::json{{"u", p.u},
                       {"R_sc", p.scattering_ratio},
                       {"g0_rad_s", p.g0},
                       {"kappa_rad_s", p.kappa},
                       {"C", p.cooperativity},
                       {"V_eff_lambda3", p.mode_volume},
                       {"finesse", p.finesse},
                       {"length_m", p.length}};
}

} // namespace cavetic
