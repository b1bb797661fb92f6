#pragma once

// Laguerre-Gaussian eigenmodes of a cylindrically symmetric cavity.

#include <cmath>
#include <complex>
#include <compare>
#include <numbers>

#include "errors.hpp"
#include "numerics.hpp"
#include "optics.hpp"

namespace cavetic {

struct ModeIndex
{
    int l = 0; ///< azimuthal
    int p = 0; ///< radial, >= 0

    auto operator<=>(const ModeIndex &) const = default;

    /// Transverse order |l| + 2p that multiplies the Gouy phase.
    [[nodiscard]] int order() const { return std::abs(l) + 2 * p; }
};

/// C_{l,p} = sqrt(2 p! / (pi (p+|l|)!)), making |Psi|^2 integrate to one over the plane.
inline double lg_normalization(ModeIndex index)
{
    if (index.p < 0)
        throw DomainError("radial mode index must be non-negative");
    const int al = std::abs(index.l);
    const double log_ratio = std::lgamma(index.p + 1.0) - std::lgamma(index.p + al + 1.0);
    return std::sqrt(2.0 / std::numbers::pi * std::exp(log_ratio));
}

/// Radius beyond which a mode carries negligible power. Low orders follow the
/// 8w rule; high p extends it since LG_p spreads to x = 2r^2/w^2 ~ 4p.
inline double lg_truncation_radius(ModeIndex index, double w)
{
    const double order = 2.0 * index.p + std::abs(index.l) + 1.0;
    return w * std::max(8.0, 3.0 * std::sqrt(order));
}

class TransverseMode
{
public:
    TransverseMode(ModeIndex index, const BeamGeometry &beam)
        : index_(index), beam_(beam), normalization_(lg_normalization(index))
    {
    }

    [[nodiscard]] ModeIndex index() const { return index_; }
    [[nodiscard]] const BeamGeometry &beam() const { return beam_; }
    [[nodiscard]] double normalization() const { return normalization_; }

    /// Real radial amplitude C/w (sqrt2 r/w)^|l| e^{-r^2/w^2} L_p^|l|(2r^2/w^2) at
    /// beam radius w; the field modulus up to sign.
    [[nodiscard]] double radial_amplitude(double r, double w) const
    {
        const int al = std::abs(index_.l);
        const double s = r / w;
        const double x = 2.0 * s * s;
        const double power = al == 0 ? 1.0 : std::pow(std::numbers::sqrt2 * s, al);
        return normalization_ / w * power * std::exp(-s * s) * laguerre(index_.p, al, x);
    }

    [[nodiscard]] double intensity(double r, double z) const
    {
        const double a = radial_amplitude(r, beam_at(beam_, z).radius);
        return a * a;
    }

private:
    ModeIndex index_;
    BeamGeometry beam_;
    double normalization_;
};

/// Full complex field Psi_{l,p}(r, phi, z), with the curvature phase
/// exp(+ik r^2 / 2R(z)) written with the same sign as the input-beam model.
inline std::complex<double> lg_field(const TransverseMode &mode, double r, double phi, double z)
{
    const BeamState s = beam_at(mode.beam(), z);
    const double amp = mode.radial_amplitude(r, s.radius);
    const double curvature = s.flat() ? 0.0 : mode.beam().wavenumber() * r * r / (2.0 * s.curvature_radius);
    const double phase =
        curvature + mode.index().l * phi - (2.0 * mode.index().p + std::abs(mode.index().l) + 1.0) * s.gouy_phase;
    return std::polar(amp, phase);
}

/// Transverse-mode frequency offset from the fundamental,
/// (c / 2 pi L)(|l| + 2p) arccos(1 - L/R).
inline double mode_frequency_shift(ModeIndex index, const CavityGeometry &geometry, const OpticalConstants &constants)
{
    if (!geometry.stable())
        throw DomainError("mode frequency shift requires 0 < L < 2R");
    const double arg = 1.0 - geometry.length / geometry.mirror_roc;
    return constants.light_speed / (2.0 * std::numbers::pi * geometry.length) * index.order() * std::acos(arg);
}

/// Power of mode (l,p) enclosed by an aperture of radius a at z_mirror, squared
/// (two mirror reflections per round trip).
inline double clipped_power(ModeIndex index, const BeamGeometry &beam, double aperture, double z_mirror,
                            const Tolerance &tol = {})
{
    if (!(aperture > 0.0))
        throw DomainError("aperture radius must be positive");
    const TransverseMode mode(index, beam);
    const double w = beam_at(beam, z_mirror).radius;
    const double upper = std::min(aperture, lg_truncation_radius(index, w));
    const auto integrand = [&](double r) {
        const double a = mode.radial_amplitude(r, w);
        return 2.0 * std::numbers::pi * r * a * a;
    };
    const double enclosed = integrate_radial(integrand, 0.0, upper, default_rule(), 1, tol);
    return enclosed * enclosed;
}

} // namespace cavetic
