#pragma once

// Transmission spectra as superpositions of per-mode resonance lines, FWHM
// extraction, and the linewidth-vs-focusing curves built from them.
//
// Each transverse mode contributes a Lorentzian of weight gamma_{l,p} and
// width kappa_{l,p}, repeated at every longitudinal order (period = FSR).
// The periodic sum of Lorentzians has the closed form
//   1 / (1 + sin^2(pi x / P) / sinh^2(pi kappa / 2P)),
// which peaks at exactly 1 and is used for evaluation. Mode centers are
// reported wrapped into (-FSR/2, FSR/2] relative to the nearest fundamental
// resonance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cavity_loss.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "lg_modes.hpp"
#include "numerics.hpp"
#include "optics.hpp"
#include "parallel.hpp"

namespace cavetic {

/// Maps a detuning into (-fsr/2, fsr/2].
inline double wrap_detuning(double nu, double fsr)
{
    double w = std::remainder(nu, fsr);
    if (w <= -0.5 * fsr)
        w += fsr;
    return w;
}

struct SpectralLine
{
    double weight = 0.0;
    double center = 0.0; ///< Hz
    double fwhm = 0.0;   ///< Hz
};

/// Line shape of unit peak; periodic in `period` when period > 0.
inline double line_shape(double detuning, double fwhm, double period)
{
    if (period > 0.0) {
        const double s = std::sin(std::numbers::pi * detuning / period);
        const double h = std::sinh(0.5 * std::numbers::pi * fwhm / period);
        return 1.0 / (1.0 + (s * s) / (h * h));
    }
    const double x = 2.0 * detuning / fwhm;
    return 1.0 / (1.0 + x * x);
}

class LineSpectrum
{
public:
    LineSpectrum() = default;

    /// period = FSR for a longitudinal comb; 0 for isolated lines.
    LineSpectrum(std::vector<SpectralLine> lines, double period) : lines_(std::move(lines)), period_(period)
    {
        for (auto &l : lines_) {
            if (!(l.fwhm > 0.0))
                throw DomainError("line width must be positive");
            if (period_ > 0.0)
                l.center = wrap_detuning(l.center, period_);
        }
    }

    [[nodiscard]] double operator()(double nu) const
    {
        double sum = 0.0;
        for (const auto &l : lines_)
            sum += l.weight * line_shape(nu - l.center, l.fwhm, period_);
        return sum;
    }

    [[nodiscard]] const std::vector<SpectralLine> &lines() const { return lines_; }
    [[nodiscard]] double period() const { return period_; }

private:
    std::vector<SpectralLine> lines_;
    double period_ = 0.0;
};

struct GridSpec
{
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    [[nodiscard]] std::size_t count() const
    {
        return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    }

    /// span_fsr free spectral ranges centered on zero at fsr/per_fsr resolution.
    static GridSpec around(double fsr, double span_fsr = 4.0, std::size_t per_fsr = 4096)
    {
        return {-0.5 * span_fsr * fsr, 0.5 * span_fsr * fsr, fsr / static_cast<double>(per_fsr)};
    }

    void validate() const
    {
        if (!(hi > lo) || !(step > 0.0))
            throw DomainError("spectrum grid must have hi > lo and a positive step");
    }
};

struct Spectrum
{
    std::vector<double> detuning;     ///< Hz, strictly increasing
    std::vector<double> transmission; ///< >= 0
    double period = 0.0;              ///< FSR when the spectrum is a comb
};

inline Spectrum sample(const LineSpectrum &model, const GridSpec &grid)
{
    grid.validate();
    Spectrum s;
    s.period = model.period();
    const std::size_t n = grid.count();
    s.detuning.resize(n);
    s.transmission.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.detuning[i] = grid.lo + static_cast<double>(i) * grid.step;
        s.transmission[i] = model(s.detuning[i]);
    }
    return s;
}

inline void write_csv(std::ostream &os, const Spectrum &s)
{
    os << "# detuning [Hz], transmission [1]\n";
    const auto old = os.precision(12);
    for (std::size_t i = 0; i < s.detuning.size(); ++i)
        os << s.detuning[i] << ',' << s.transmission[i] << '\n';
    os.precision(old);
}

//==============================================================================
// FWHM extraction
//==============================================================================

namespace detail {

struct PeakBracket
{
    std::size_t peak = 0;
    std::size_t left = 0;  ///< last sample below half maximum, left side
    std::size_t right = 0; ///< first sample below half maximum, right side
    double half = 0.0;
};

// Global maximum (ties resolved toward zero detuning) and the outermost
// half-maximum crossings within one period around it.
inline PeakBracket bracket_peak(const Spectrum &s)
{
    const auto &x = s.detuning;
    const auto &y = s.transmission;
    if (x.size() < 3 || x.size() != y.size())
        throw RangeError("spectrum needs at least three samples");
    const double ymax = *std::max_element(y.begin(), y.end());
    if (!(ymax > 0.0))
        throw RangeError("spectrum has no positive maximum");
    std::size_t peak = 0;
    bool found = false;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] >= ymax * (1.0 - 1e-12) && (!found || std::abs(x[i]) < std::abs(x[peak]))) {
            peak = i;
            found = true;
        }
    }
    if (peak == 0 || peak + 1 == y.size())
        throw RangeError("spectrum maximum lies at the grid edge");

    std::size_t lo = 0;
    std::size_t hi = x.size() - 1;
    if (s.period > 0.0) {
        const double half_period = 0.5 * s.period;
        while (lo < peak && x[lo] < x[peak] - half_period)
            ++lo;
        while (hi > peak && x[hi] > x[peak] + half_period)
            --hi;
    }
    PeakBracket b;
    b.peak = peak;
    b.half = 0.5 * ymax;
    std::size_t first = lo;
    while (y[first] < b.half)
        ++first;
    std::size_t last = hi;
    while (y[last] < b.half)
        --last;
    if (first == lo || last == hi)
        throw RangeError("no half-maximum crossing inside the search window");
    b.left = first - 1;
    b.right = last + 1;
    return b;
}

inline double interpolate_crossing(double x0, double y0, double x1, double y1, double level)
{
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

} // namespace detail

/// Width between the outermost half-maximum crossings around the global peak,
/// linearly interpolated between samples.
inline double fwhm(const Spectrum &s)
{
    const auto b = detail::bracket_peak(s);
    const auto &x = s.detuning;
    const auto &y = s.transmission;
    const double left = detail::interpolate_crossing(x[b.left], y[b.left], x[b.left + 1], y[b.left + 1], b.half);
    const double right = detail::interpolate_crossing(x[b.right - 1], y[b.right - 1], x[b.right], y[b.right], b.half);
    return right - left;
}

/// FWHM with the peak height and both crossings refined on the model itself.
inline double fwhm(const LineSpectrum &model, const GridSpec &grid)
{
    const Spectrum s = sample(model, grid);
    const auto b = detail::bracket_peak(s);
    const auto &x = s.detuning;
    const double step = x[1] - x[0];
    const double x_peak = golden_section_max([&](double nu) { return model(nu); }, x[b.peak] - step,
                                             x[b.peak] + step, step * 1e-9);
    const double half = 0.5 * std::max(model(x_peak), s.transmission[b.peak]);
    const auto crossing = [&](double below, double above) {
        for (int i = 0; i < 200 && std::abs(above - below) > 1e-12 * step; ++i) {
            const double mid = 0.5 * (below + above);
            (model(mid) < half ? below : above) = mid;
        }
        return 0.5 * (below + above);
    };
    // The outer sample of each bracket sits below half maximum; walk inward
    // until the model is above it (the sampled value may straddle after the
    // peak refinement raised the half level).
    std::size_t li = b.left + 1;
    while (li < b.peak && model(x[li]) < half)
        ++li;
    std::size_t ri = b.right - 1;
    while (ri > b.peak && model(x[ri]) < half)
        --ri;
    return crossing(x[ri + 1], x[ri]) - crossing(x[li - 1], x[li]);
}

//==============================================================================
// Synthesis from mode populations
//==============================================================================

struct LineSet
{
    LineSpectrum spectrum;
    std::vector<ModeIndex> unresonant; ///< populated modes with sub-unity finesse
};

/// One line per populated mode: center = wrapped transverse shift, width =
/// kappa_{l,p} from the clipped-power loss; weight = gamma / reference.
inline LineSet build_lines(const std::vector<ModePopulation> &populations, const CavityGeometry &geometry,
                           const BeamGeometry &beam, const OpticalConstants &constants, double reference = 1.0,
                           const Tolerance &tol = {})
{
    if (populations.empty())
        throw DomainError("at least one mode population is required");
    const double fsr = free_spectral_range(geometry, constants);
    std::vector<SpectralLine> lines;
    LineSet out;
    for (const auto &m : populations) {
        if (m.gamma <= 0.0)
            continue;
        double kappa = 0.0;
        try {
            kappa = per_mode_linewidth(m.index, geometry, beam, constants, tol);
        } catch (const DomainError &) {
            out.unresonant.push_back(m.index);
            continue;
        }
        lines.push_back({m.gamma / reference, mode_frequency_shift(m.index, geometry, constants), kappa});
    }
    out.spectrum = LineSpectrum(std::move(lines), fsr);
    return out;
}

inline Spectrum synthesize(const std::vector<ModePopulation> &populations, const CavityGeometry &geometry,
                           const BeamGeometry &beam, const OpticalConstants &constants,
                           std::optional<GridSpec> grid = std::nullopt, double reference = 1.0)
{
    const LineSet set = build_lines(populations, geometry, beam, constants, reference);
    return sample(set.spectrum, grid.value_or(GridSpec::around(free_spectral_range(geometry, constants))));
}

//==============================================================================
// Per-point analysis and linewidth curves
//==============================================================================

struct AnalysisOptions
{
    int p_max = 50;
    std::size_t grid_per_fsr = 4096;
    double grid_span_fsr = 4.0;
    Tolerance tolerance = default_population_tolerance();
    std::size_t jobs = 1; ///< threads for the per-mode populations
};

struct PointAnalysis
{
    double u = 0.0;
    CavityGeometry geometry;
    BeamGeometry beam;
    double mirror_spot = 0.0;
    double diffraction_only = 0.0; ///< Hz, fundamental linewidth from the closed-form loss
    Decomposition decomposition;
    LineSet lines;
    double ideal_reference = 1.0; ///< gamma_00 for phi = 0
    double fwhm = 0.0;            ///< Hz, of the synthesized spectrum
    GridSpec grid;
};

/// Resolves the geometry at u, decomposes the aberrated input beam, builds
/// the spectrum and extracts its FWHM.
inline PointAnalysis analyze_point(const CavitySetup &setup, double u, const WavefrontProfile &retardance,
                                   const AnalysisOptions &opt = {})
{
    PointAnalysis a;
    a.u = u;
    a.geometry = setup.geometry_for_u(u);
    a.beam = fundamental_mode(a.geometry, setup.constants);
    const double z_m = 0.5 * a.geometry.length;
    a.mirror_spot = beam_at(a.beam, z_m).radius;
    a.diffraction_only = fundamental_linewidth(a.geometry, setup.constants);
    const AberratedInput input(a.beam, retardance);
    a.decomposition = decompose(input, opt.p_max, a.geometry.aperture_radius, z_m, opt.tolerance, opt.jobs);
    const double e = -std::expm1(-2.0 * std::pow(a.geometry.aperture_radius / a.mirror_spot, 2));
    a.ideal_reference = e * e;
    a.lines = build_lines(a.decomposition.modes, a.geometry, a.beam, setup.constants, a.ideal_reference);
    const double fsr = free_spectral_range(a.geometry, setup.constants);
    a.grid = GridSpec::around(fsr, opt.grid_span_fsr, opt.grid_per_fsr);
    a.fwhm = fwhm(a.lines.spectrum, a.grid);
    return a;
}

struct CurvePoint
{
    double u = 0.0;
    double fwhm = std::numeric_limits<double>::quiet_NaN();             ///< requested model, Hz
    double diffraction_only = std::numeric_limits<double>::quiet_NaN(); ///< Hz
    std::string error;                                                  ///< empty on success

    [[nodiscard]] bool ok() const { return error.empty(); }
};

/// FWHM versus u. Without aberrations this is the closed-form fundamental
/// linewidth; with them the full trace + decomposition + synthesis pipeline.
/// Failed points carry their error message and keep their position.
inline std::vector<CurvePoint> predicted_linewidth_curve(const CavitySetup &setup, const std::vector<double> &us,
                                                         bool with_aberrations, const AnalysisOptions &opt = {},
                                                         std::size_t jobs = 1)
{
    setup.validate();
    std::vector<CurvePoint> out(us.size());
    std::optional<WavefrontProfile> retardance;
    std::string trace_error;
    if (with_aberrations) {
        try {
            retardance = setup.retardance();
        } catch (const std::exception &e) {
            trace_error = e.what();
        }
    }
    parallel_for(us.size(), jobs, [&](std::size_t i) {
        CurvePoint &pt = out[i];
        pt.u = us[i];
        try {
            const auto geometry = setup.geometry_for_u(us[i]);
            pt.diffraction_only = fundamental_linewidth(geometry, setup.constants);
            if (!with_aberrations) {
                pt.fwhm = pt.diffraction_only;
                return;
            }
            if (!retardance) {
                pt.error = trace_error;
                return;
            }
            pt.fwhm = analyze_point(setup, us[i], *retardance, opt).fwhm;
        } catch (const std::exception &e) {
            pt.error = e.what();
        }
    });
    return out;
}

} // namespace cavetic
