#pragma once

// Anaclastic cavity lens: an ellipsoidal input face that focuses a collimated
// beam without aberration onto the center of the spherical mirror face.
//
// The surface is the ellipse (1 - z/a)^2 + (r/b)^2 = 1 with a = f n/(n+1) and
// b = f sqrt((n-1)/(n+1)). Its eccentricity is 1/n and its far focus sits at
// z = f. (A hyperbola form with a minus sign appears in some drawings of this
// lens; it does not reproduce these half-axes and is not used.)

#include <cmath>
#include <cstddef>

#include "errors.hpp"
#include "optics.hpp"
#include "raytrace.hpp"

#include <json.hpp>

namespace cavetic {

struct AnaclasticPrescription
{
    double focal_length = 0.0;
    double refractive_index = 0.0;
    double half_axis_a = 0.0; ///< longitudinal
    double half_axis_b = 0.0; ///< transverse
    double mirror_roc = 0.0;
    double mirror_reflectivity = 0.9936;

    [[nodiscard]] double eccentricity() const
    {
        return std::sqrt(half_axis_a * half_axis_a - half_axis_b * half_axis_b) / half_axis_a;
    }
    /// Mirror sphere center, which coincides with the focus.
    [[nodiscard]] double mirror_center_z() const { return focal_length; }
    [[nodiscard]] double mirror_vertex_z() const { return focal_length - mirror_roc; }
    /// Paraxial radius of curvature of the ellipsoid at its vertex, b^2/a.
    [[nodiscard]] double vertex_curvature_radius() const { return half_axis_b * half_axis_b / half_axis_a; }
};

inline AnaclasticPrescription design(double focal_length, double refractive_index, double mirror_roc,
                                     double mirror_reflectivity = 0.9936)
{
    if (!(refractive_index > 1.0))
        throw DomainError("refractive index must exceed 1 (n > 1)");
    if (!(focal_length > 0.0))
        throw DomainError("focal length must be positive");
    if (!(mirror_roc > 0.0 && mirror_roc < focal_length))
        throw DomainError("mirror radius must satisfy 0 < R_m < f");
    if (!(mirror_reflectivity > 0.0 && mirror_reflectivity < 1.0))
        throw DomainError("mirror reflectivity must lie in (0, 1)");
    const double n = refractive_index;
    AnaclasticPrescription p;
    p.focal_length = focal_length;
    p.refractive_index = n;
    p.half_axis_a = focal_length * n / (n + 1.0);
    p.half_axis_b = focal_length * std::sqrt((n - 1.0) / (n + 1.0));
    p.mirror_roc = mirror_roc;
    p.mirror_reflectivity = mirror_reflectivity;
    return p;
}

/// Two identical lenses facing each other, gap d short of concentric.
inline CavityGeometry concentric_cavity(const AnaclasticPrescription &pres, double gap, double aperture)
{
    if (!(gap >= 0.0))
        throw DomainError("concentric gap must be non-negative");
    return CavityGeometry::from_gap(pres.mirror_roc, gap, aperture, pres.mirror_reflectivity);
}

/// Lens whose front face is the designed ellipsoid, clear to `front_aperture` (<= b).
inline AsphericLens anaclastic_lens(const AnaclasticPrescription &pres, double front_aperture)
{
    AsphericLens lens;
    lens.front = {Ellipsoid{pres.half_axis_a, pres.half_axis_b, 0.0}, front_aperture};
    lens.refractive_index = pres.refractive_index;
    lens.mirror = Sphere{pres.mirror_roc, pres.mirror_vertex_z()};
    lens.mirror_aperture = pres.mirror_roc;
    return lens;
}

/// Same lens with the ellipsoid replaced by a sphere of equal vertex curvature.
inline AsphericLens spherical_substitute(const AnaclasticPrescription &pres, double front_aperture)
{
    AsphericLens lens = anaclastic_lens(pres, front_aperture);
    lens.front.shape = Sphere{pres.vertex_curvature_radius(), 0.0};
    return lens;
}

/// Maximum |phi| at the mirror for collimated input filling `aperture`.
inline double verify(const AnaclasticPrescription &pres, double aperture, const OpticalConstants &constants,
                     std::size_t n_samples = 256)
{
    if (aperture == 0.0)
        return 0.0;
    if (!(aperture > 0.0 && aperture <= pres.half_axis_b))
        throw DomainError("verification aperture must satisfy 0 <= aperture <= b");
    return retardance_anaclastic(anaclastic_lens(pres, aperture), aperture, n_samples, constants).max_abs_phase();
}

inline void to_json(nlohmann::json &j, const AnaclasticPrescription &p)
{
    j = nlohmann::json{{"focal_length_m", p.focal_length},
                       {"refractive_index", p.refractive_index},
                       {"half_axis_a_m", p.half_axis_a},
                       {"half_axis_b_m", p.half_axis_b},
                       {"eccentricity", p.eccentricity()},
                       {"mirror_roc_m", p.mirror_roc},
                       {"mirror_center_z_m", p.mirror_center_z()},
                       {"mirror_vertex_z_m", p.mirror_vertex_z()},
                       {"mirror_reflectivity", p.mirror_reflectivity}};
}

inline void from_json(const nlohmann::json &j, AnaclasticPrescription &p)
{
    p = design(j.at("focal_length_m").get<double>(), j.at("refractive_index").get<double>(),
               j.at("mirror_roc_m").get<double>(), j.value("mirror_reflectivity", 0.9936));
}

} // namespace cavetic
