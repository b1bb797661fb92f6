// Designs the default anaclastic lens-mirror, checks its wavefront, and finds
// the focusing parameter that maximizes single-atom cooperativity.

#include <cstdio>

#include <cavetic/cavetic.hpp>

int main()
{
    using namespace cavetic;
    const OpticalConstants constants;
    const auto pres = design(10e-3, 1.76583, 5.5e-3);
    std::printf("ellipse half-axes a = %.4f mm, b = %.4f mm, e = %.4f\n", pres.half_axis_a * 1e3,
                pres.half_axis_b * 1e3, pres.eccentricity());

    const double aperture = 4e-3;
    std::printf("max |phi| over %.0f mm: %.3g waves\n", aperture * 1e3,
                verify(pres, aperture, constants) / (2.0 * std::numbers::pi));

    const auto cavity = concentric_cavity(pres, 0.0, aperture);
    std::printf("concentric FSR %.3f GHz\n", free_spectral_range(cavity, constants) * 1e-9);

    const AtomParameters atom;
    const double u = optimize_u(pres, aperture, atom, 0.1, 0.7, constants);
    const auto best = cqed_point(pres, aperture, u, atom, constants);
    std::printf("best u = %.3f: C = %.1f, g0/2pi = %.2f MHz, kappa/2pi = %.2f MHz\n", u, best.cooperativity,
                best.g0 / (2.0 * std::numbers::pi) * 1e-6, best.kappa / (2.0 * std::numbers::pi) * 1e-6);
}
