#pragma once

// The two cavity families studied: conventional plano-concave mirrors and
// anaclastic lens-mirrors. A CavitySetup resolves a focusing parameter into a
// concrete geometry and knows how to trace its input-beam retardance.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "anaclastic.hpp"
#include "errors.hpp"
#include "optics.hpp"
#include "raytrace.hpp"

namespace cavetic {

enum class CavityFamily { plano_concave, anaclastic };

inline std::string_view to_string(CavityFamily f)
{
    return f == CavityFamily::plano_concave ? "plano-concave" : "anaclastic";
}

inline std::optional<CavityFamily> parse_family(std::string_view s)
{
    if (s == "plano-concave")
        return CavityFamily::plano_concave;
    if (s == "anaclastic")
        return CavityFamily::anaclastic;
    return std::nullopt;
}

struct CavitySetup
{
    CavityFamily family = CavityFamily::anaclastic;
    OpticalConstants constants;
    double mirror_roc = 5.5e-3;
    double aperture = 4.0e-3;
    double reflectivity = 0.9936;
    // plano-concave substrate
    double substrate_thickness = 4.0e-3;
    double substrate_index = 1.5112;
    // anaclastic lens
    double focal_length = 10e-3;
    double lens_index = 1.76583;
    std::size_t ray_samples = 256;

    /// BK-7 mirrors, R = 50 mm, 6.35 mm aperture radius, 0.978 reflectivity.
    static CavitySetup plano_concave_defaults()
    {
        CavitySetup s;
        s.family = CavityFamily::plano_concave;
        s.mirror_roc = 50e-3;
        s.aperture = 6.35e-3;
        s.reflectivity = 0.978;
        return s;
    }

    /// N-SF11 lens-mirrors, f = 10 mm, R_m = 5.5 mm, 0.9936 reflectivity.
    static CavitySetup anaclastic_defaults() { return CavitySetup{}; }

    static CavitySetup defaults(CavityFamily f)
    {
        return f == CavityFamily::plano_concave ? plano_concave_defaults() : anaclastic_defaults();
    }

    void validate() const
    {
        constants.validate();
        if (!(mirror_roc > 0.0))
            throw DomainError("mirror radius of curvature must be positive");
        if (!(aperture > 0.0))
            throw DomainError("aperture radius must be positive");
        if (!(reflectivity > 0.0 && reflectivity < 1.0))
            throw DomainError("mirror reflectivity must lie in (0, 1)");
        if (ray_samples < 16)
            throw DomainError("at least 16 ray samples required");
        if (family == CavityFamily::plano_concave) {
            substrate().validate();
        } else {
            const auto pres = prescription();
            if (aperture > pres.mirror_roc)
                throw DomainError("aperture exceeds the mirror sphere radius");
        }
    }

    [[nodiscard]] PlanoConcaveSubstrate substrate() const
    {
        return {mirror_roc, substrate_thickness, substrate_index, aperture, 0.0};
    }

    [[nodiscard]] AnaclasticPrescription prescription() const
    {
        return design(focal_length, lens_index, mirror_roc, reflectivity);
    }

    [[nodiscard]] CavityGeometry geometry_for_gap(double gap) const
    {
        const auto g = CavityGeometry::from_gap(mirror_roc, gap, aperture, reflectivity);
        g.validate();
        return g;
    }

    [[nodiscard]] CavityGeometry geometry_for_u(double u) const
    {
        return cavity_for_focusing(mirror_roc, u, aperture, reflectivity, constants);
    }

    /// Input-beam retardance at the (input) mirror, traced over the mirror aperture.
    [[nodiscard]] WavefrontProfile retardance() const
    {
        if (family == CavityFamily::plano_concave) {
            const auto sub = substrate();
            return retardance_planoconcave(sub, sub.center_of_curvature(), ray_samples, constants);
        }
        const auto pres = prescription();
        const AnaclasticTracer tracer(anaclastic_lens(pres, pres.half_axis_b));
        const double launch = tracer.height_for_radius(aperture);
        return retardance_anaclastic(anaclastic_lens(pres, launch), launch, ray_samples, constants);
    }
};

} // namespace cavetic
