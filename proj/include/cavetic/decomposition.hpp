#pragma once

// Projection of an aberrated input beam onto the cavity's LG modes.
//
// The input is the cavity fundamental multiplied by exp(i phi(r)), with phi a
// radially symmetric retardance. The azimuthal overlap integral is therefore
// 2 pi for l = 0 and exactly zero otherwise.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <vector>

#include "errors.hpp"
#include "lg_modes.hpp"
#include "numerics.hpp"
#include "optics.hpp"
#include "parallel.hpp"
#include "raytrace.hpp"

#include <json.hpp>

namespace cavetic {

class AberratedInput
{
public:
    AberratedInput(const BeamGeometry &beam, WavefrontProfile retardance, double phase_offset = 0.0)
        : beam_(beam), retardance_(std::move(retardance)), offset_(phase_offset)
    {
        retardance_.validate();
        phase_ = MonotoneCubic(retardance_.radius, retardance_.phase);
    }

    /// Unaberrated input (phi = 0) defined out to r_max.
    static AberratedInput ideal(const BeamGeometry &beam, double r_max)
    {
        return {beam, WavefrontProfile::uniform(r_max)};
    }

    [[nodiscard]] const BeamGeometry &beam() const { return beam_; }
    [[nodiscard]] const WavefrontProfile &retardance() const { return retardance_; }
    /// phi(r) plus any constant offset; the offset is a pure gauge.
    [[nodiscard]] double phase(double r) const { return offset_ + phase_(r); }
    [[nodiscard]] double max_radius() const { return phase_.upper(); }

private:
    BeamGeometry beam_;
    WavefrontProfile retardance_;
    double offset_ = 0.0;
    MonotoneCubic phase_;
};

struct ModePopulation
{
    ModeIndex index;
    double gamma = 0.0;
};

/// Populations below this are reported as zero.
inline constexpr double population_floor = 1e-12;

inline Tolerance default_population_tolerance()
{
    return {1e-10, 1e-14, 4096};
}

/// gamma_{l,p} = |int_0^a int_0^2pi Psi*_{l,p} xi r dr dphi|^2 at the mirror.
/// The radial integral stops at min(a, last traced radius).
inline double population(const AberratedInput &input, ModeIndex index, double aperture, double z_mirror,
                         const Tolerance &tol = default_population_tolerance(), std::size_t panels = 1)
{
    if (index.p < 0)
        throw DomainError("radial mode index must be non-negative");
    if (!(aperture > 0.0))
        throw DomainError("aperture radius must be positive");
    if (index.l != 0)
        return 0.0;
    const TransverseMode mode(index, input.beam());
    const TransverseMode fundamental({0, 0}, input.beam());
    const BeamState s = beam_at(input.beam(), z_mirror);
    const double w = s.radius;
    // Curvature phases of Psi and xi cancel; the Gouy phase of Psi is a
    // global factor per mode and drops out of |.|^2.
    const double upper = std::min({aperture, input.max_radius(), lg_truncation_radius(index, w)});
    const auto integrand = [&](double r) {
        const double amp = mode.radial_amplitude(r, w) * fundamental.radial_amplitude(r, w);
        return std::polar(2.0 * std::numbers::pi * r * amp, input.phase(r));
    };
    const std::complex<double> overlap = integrate_radial(integrand, 0.0, upper, default_rule(), panels, tol);
    const double gamma = std::norm(overlap);
    return gamma < population_floor ? 0.0 : gamma;
}

struct Decomposition
{
    std::vector<ModePopulation> modes; ///< l = 0, p = 0..p_max
    double residual = 0.0;             ///< 1 - sum(gamma): power outside the computed set

    [[nodiscard]] double total() const
    {
        double s = 0.0;
        for (const auto &m : modes)
            s += m.gamma;
        return s;
    }
};

inline Decomposition decompose(const AberratedInput &input, int p_max, double aperture, double z_mirror,
                               const Tolerance &tol = default_population_tolerance(), std::size_t jobs = 1,
                               std::size_t panels = 1)
{
    if (p_max < 0)
        throw DomainError("p_max must be non-negative");
    Decomposition out;
    out.modes.resize(static_cast<std::size_t>(p_max) + 1);
    parallel_for(out.modes.size(), jobs, [&](std::size_t i) {
        const ModeIndex idx{0, static_cast<int>(i)};
        out.modes[i] = {idx, population(input, idx, aperture, z_mirror, tol, panels)};
    });
    out.residual = 1.0 - out.total();
    return out;
}

inline void write_csv(std::ostream &os, const Decomposition &d)
{
    os << "# l [1], p [1], gamma [1]\n";
    const auto old = os.precision(12);
    for (const auto &m : d.modes)
        os << m.index.l << ',' << m.index.p << ',' << m.gamma << '\n';
    os << "# residual " << d.residual << '\n';
    os.precision(old);
}

inline void to_json(nlohmann::json &j, const Decomposition &d)
{
    j = nlohmann::json{{"modes", nlohmann::json::array()}, {"residual", d.residual}};
    for (const auto &m : d.modes)
        j["modes"].push_back({{"l", m.index.l}, {"p", m.index.p}, {"gamma", m.gamma}});
}

} // namespace cavetic
